/**
 * Command-line front end. Reads spaces, subspaces, vectors and matrices as
 * JSON (inline or from files), dispatches to the deciders and writes one JSON
 * report to `out`. Timing and human-readable logs go to `err`.
 *
 * Exit codes: 0 decided, 1 usage or input error, 2 inconclusive, unsupported
 * or cap exceeded, 3 internal consistency failure.
 */

#ifndef COPROX_CLI_HPP
#define COPROX_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

#include "coprox/json_io.hpp"

namespace coprox::cli {

enum ExitCode : int { Decided = 0, InputFailure = 1, Inconclusive = 2, Inconsistent = 3 };

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/**
 * Independently re-checks the certificate of an emitted report from its
 * input echo. Returns {"verified": bool, "checks": [...]}; never calls the
 * decider that produced the certificate.
 */
io::json verify_report(const io::json& report);

/**
 * The worked-example corpus: name → {"args": [...], "query": {...},
 * "expected": {...}}. `args` is the subcommand path; the query document is
 * passed with --query.
 */
io::json fixture_corpus();

}   // namespace coprox::cli

#endif
