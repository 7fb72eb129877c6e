#pragma once

// One function per CLI subcommand. Each builds a Report from already-parsed
// input; the CLI only handles argv, files and rendering.

#include "affcone/io.hpp"

#include <optional>
#include <string>

namespace affcone::commands {

using io::json;
using io::Report;

/// Parses "3,-1,-1/2" or a JSON array "[3, \"-1\", \"-1/2\"]".
picard::LatticeClass parse_inline_class(const picard::PicardLattice& lat, const std::string& text);

Report lines(int n);
Report nef(int n, const picard::LatticeClass& h);
Report nefvalue(int n, const picard::LatticeClass& h);

Report cyl_verify(const json& fixture);
Report cyl_audit(const json& fixture);
Report cyl_eps(const json& fixture);
Report cyl_ml(const json& fixture);

Report lnd_check(const json& fixture);

Report graph_run(const json& graph, const json& script, const std::optional<json>& expect);
Report graph_fibers(const json& fixture);

Report nf_search(const nfdescent::SearchBounds& bounds);

Report crepant(const json& fixture);

}  // namespace affcone::commands
