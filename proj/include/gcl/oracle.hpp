#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "gcl/polytope.hpp"
#include "gcl/shape.hpp"

namespace gcl {

// Deterministic generator with independent streams per sample index.
class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(std::uint64_t seed);

    std::uint64_t next();
    double uniform();   // [0, 1), 53-bit
    double gaussian();  // standard normal, polar rejection

  private:
    std::uint64_t s_[4];
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Stream k of a master seed; distinct k give decorrelated generators.
Xoshiro256pp stream_rng(std::uint64_t seed, std::uint64_t stream);

// Row-major n x n matrices.
using CMatrix = std::vector<std::complex<double>>;

CMatrix haar_unitary(int n, Xoshiro256pp& rng);

// U diag(lambda) U* for Haar U, re-symmetrized against roundoff.
CMatrix sample_orbit(const std::vector<double>& lambda, Xoshiro256pp& rng);

// Eigenvalues of a Hermitian matrix, descending.  Cyclic complex Jacobi;
// failure to converge is an InternalError.
std::vector<double> hermitian_eigenvalues(CMatrix a, int n);

// Row m holds the m descending eigenvalues of the leading m x m submatrix.
struct FloatPattern {
    std::vector<std::vector<double>> rows;
};

FloatPattern gc_map(const CMatrix& a, int n);

struct OracleReport {
    int samples = 0;
    int failures = 0;
    double max_interlacing_violation = 0.0;
    double max_trace_violation = 0.0;
    double tolerance = 0.0;
    std::uint64_t seed = 0;
};

// Samples random orbit points and checks the eigenvalue patterns: interlacing
// within tol, partial traces within tol, full spectrum recovered to 1e-9.
// n is capped at 12 (LimitError).
OracleReport verify(const Spectrum& lambda, int samples, std::uint64_t seed, double tol);

// Exact containment of a floating pattern, with every inequality slackened by
// tol to absorb roundoff.
bool contains_widened(const GCPolytope& P, const FloatPattern& pat, double tol);

nlohmann::ordered_json report_to_json(const OracleReport& r);

}  // namespace gcl
