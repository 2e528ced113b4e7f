#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gcl/diagram.hpp"

namespace gcl {

// One parsed invocation. Commands taking a spectrum accept exactly one of
// shape (monotone spectrum generated) or lambda (explicit rationals).
struct RunConfig {
    std::string command;
    std::string shape;            // "a,b,..:n"
    std::string lambda;           // "v1,v2,.." with rational entries
    std::string format = "text";  // text | json
    std::string out_path;         // empty: write to the stream
    EnumerationGuard guard;
    int samples = 10000;  // verify
    std::uint64_t seed = 0;
    double tol = 1e-8;
    std::string at;       // codim: "a,b"
    std::string point;    // carrier: "i,j=p/q;..."
    std::string weights;  // maslov: "w1,w2,.."
};

// Runs one command and writes its report. Throws the gcl error types.
void execute(const RunConfig& cfg, std::ostream& out);

// argv-level entry point. Exit codes: 0 success, 1 usage, 2 rejected input or
// guard limit, 3 broken internal invariant.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gcl
