#pragma once

// cfscount command-line front end. Every result is one JSON object per line
// on the output stream; diagnostics go to the error stream.
//
//   cfscount generate <family> [-n N] [--rows R --cols C] [--seed S] [-o FILE]
//   cfscount count <kind> FILE [--restricted EDGES] [--memo-cap N] [--labeling-seed S] [--no-memo]
//   cfscount enumerate <kind> FILE [--restricted EDGES] [--perfect-only] [--cap N]
//   cfscount bench CONFIG.json
//
// family: grid, convex, square, three-layers, max-layers
// kind:   triangulations, matchings, cycles

#include <iosfwd>
#include <string>
#include <vector>

namespace cfs {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitResource = 3;

inline constexpr int kReportSchema = 1;

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv);

}  // namespace cfs
