#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

// Command dispatch: parse a JSON job specification, run the requested
// computation, and emit CSV or JSON records to the output sink.

namespace entlab::cli {

// Exit codes: 0 success, 1 validation error (unknown command, malformed
// jobspec — reported with the offending field path), 2 numerical failure or
// a tolerance violation in one of the *-check commands.
int run(const std::string& command, const nlohmann::json& jobspec, std::ostream& out);

// Flag front end: <command> --config <file> --format csv|json --alpha <list>
// --seed <u64> --threads <k> --out <file>; ENTROPY_LAB_THREADS is the
// fallback for --threads. Flag values are merged into the jobspec, then
// dispatched through run().
int run_cli(int argc, char** argv);

} // namespace entlab::cli
