#include "gcl/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "gcl/error.hpp"
#include "gcl/rational.hpp"

namespace gcl {

namespace {

constexpr double kSpectrumTol = 1e-9;  // full-spectrum recovery accuracy

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed) {
    std::uint64_t sm = seed;
    bool nonzero = false;
    for (auto& w : s_) {
        w = splitmix64(sm);
        nonzero = nonzero || w != 0;
    }
    if (!nonzero) s_[0] = 1;  // the all-zero state is a fixed point
}

std::uint64_t Xoshiro256pp::next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Xoshiro256pp::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Xoshiro256pp::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

Xoshiro256pp stream_rng(std::uint64_t seed, std::uint64_t stream) {
    // Offsetting the seed keeps sample streams from sharing splitmix windows.
    return Xoshiro256pp(seed ^ (0xBF58476D1CE4E5B9ULL * (stream + 1)));
}

CMatrix haar_unitary(int n, Xoshiro256pp& rng) {
    const auto N = static_cast<std::size_t>(n);
    CMatrix g(N * N);
    for (auto& z : g) z = {rng.gaussian(), rng.gaussian()};

    // Modified Gram-Schmidt on columns; the implied triangular factor has a
    // positive real diagonal, which is exactly the Haar normalization.
    for (std::size_t j = 0; j < N; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            std::complex<double> coef = 0.0;
            for (std::size_t i = 0; i < N; ++i) coef += std::conj(g[i * N + k]) * g[i * N + j];
            for (std::size_t i = 0; i < N; ++i) g[i * N + j] -= coef * g[i * N + k];
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < N; ++i) norm += std::norm(g[i * N + j]);
        norm = std::sqrt(norm);
        if (!(norm > 1e-12)) throw InternalError("oracle: degenerate Gaussian column");
        for (std::size_t i = 0; i < N; ++i) g[i * N + j] /= norm;
    }
    return g;
}

CMatrix sample_orbit(const std::vector<double>& lambda, Xoshiro256pp& rng) {
    const auto N = lambda.size();
    CMatrix u = haar_unitary(static_cast<int>(N), rng);
    CMatrix a(N * N, 0.0);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            std::complex<double> v = 0.0;
            for (std::size_t k = 0; k < N; ++k)
                v += u[i * N + k] * lambda[k] * std::conj(u[j * N + k]);
            a[i * N + j] = v;
        }
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = i + 1; j < N; ++j) {
            std::complex<double> m = 0.5 * (a[i * N + j] + std::conj(a[j * N + i]));
            a[i * N + j] = m;
            a[j * N + i] = std::conj(m);
        }
        a[i * N + i] = a[i * N + i].real();
    }
    return a;
}

std::vector<double> hermitian_eigenvalues(CMatrix a, int n) {
    const auto N = static_cast<std::size_t>(n);
    double fro = 0.0;
    for (const auto& z : a) fro += std::norm(z);
    fro = std::sqrt(fro);
    const double eps = 1e-12 * std::max(1.0, fro);

    auto offdiag = [&] {
        double s = 0.0;
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t q = p + 1; q < N; ++q) s += 2.0 * std::norm(a[p * N + q]);
        return std::sqrt(s);
    };

    bool converged = false;
    for (int sweep = 0; sweep < 50 && !converged; ++sweep) {
        if (offdiag() <= eps) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t q = p + 1; q < N; ++q) {
                const std::complex<double> apq = a[p * N + q];
                const double r = std::abs(apq);
                if (r <= eps / (10.0 * static_cast<double>(N))) continue;
                const std::complex<double> phase = apq / r;
                const double app = a[p * N + p].real();
                const double aqq = a[q * N + q].real();
                const double tau = (aqq - app) / (2.0 * r);
                const double t =
                    (tau >= 0 ? -1.0 : 1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t k = 0; k < N; ++k) {
                    if (k == p || k == q) continue;
                    const std::complex<double> akp = a[k * N + p];
                    const std::complex<double> akq = a[k * N + q];
                    const std::complex<double> nkp = c * akp + s * std::conj(phase) * akq;
                    const std::complex<double> nkq = -s * phase * akp + c * akq;
                    a[k * N + p] = nkp;
                    a[p * N + k] = std::conj(nkp);
                    a[k * N + q] = nkq;
                    a[q * N + k] = std::conj(nkq);
                }
                a[p * N + p] = app + r * t;
                a[q * N + q] = aqq - r * t;
                a[p * N + q] = 0.0;
                a[q * N + p] = 0.0;
            }
    }
    if (!converged && offdiag() > eps)
        throw InternalError("oracle: eigenvalue iteration did not converge");

    std::vector<double> ev(N);
    for (std::size_t i = 0; i < N; ++i) ev[i] = a[i * N + i].real();
    std::sort(ev.begin(), ev.end(), std::greater<double>());
    return ev;
}

FloatPattern gc_map(const CMatrix& a, int n) {
    const auto N = static_cast<std::size_t>(n);
    if (a.size() != N * N) throw UsageError("oracle: matrix size mismatch");
    FloatPattern pat;
    pat.rows.reserve(N);
    for (std::size_t m = 1; m <= N; ++m) {
        CMatrix lead(m * m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) lead[i * m + j] = a[i * N + j];
        pat.rows.push_back(hermitian_eigenvalues(std::move(lead), static_cast<int>(m)));
    }
    return pat;
}

OracleReport verify(const Spectrum& lambda, int samples, std::uint64_t seed, double tol) {
    const int n = lambda.n();
    if (n > 12) throw LimitError("oracle: matrix size exceeds the sampling limit (12)");
    if (samples < 1) throw InputError("oracle: sample count must be positive");
    if (!(tol > 0.0)) throw InputError("oracle: tolerance must be positive");

    std::vector<double> lam;
    lam.reserve(static_cast<std::size_t>(n));
    for (const Rational& v : lambda.values) lam.push_back(v.convert_to<double>());

    OracleReport rep;
    rep.samples = samples;
    rep.tolerance = tol;
    rep.seed = seed;

    for (int k = 0; k < samples; ++k) {
        Xoshiro256pp rng = stream_rng(seed, static_cast<std::uint64_t>(k));
        CMatrix a = sample_orbit(lam, rng);
        FloatPattern pat = gc_map(a, n);

        double vi = 0.0;
        for (int i = 1; i <= n - 1; ++i)
            for (int j = 1; i + j <= n; ++j) {
                const double uij = pat.rows[static_cast<std::size_t>(i + j - 2)][static_cast<std::size_t>(i - 1)];
                const double up = pat.rows[static_cast<std::size_t>(i + j - 1)][static_cast<std::size_t>(i - 1)];
                const double dn = pat.rows[static_cast<std::size_t>(i + j - 1)][static_cast<std::size_t>(i)];
                vi = std::max({vi, uij - up, dn - uij});
            }

        double vt = 0.0;
        for (int m = 1; m <= n; ++m) {
            double trace = 0.0;
            for (int i = 0; i < m; ++i)
                trace += a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                           static_cast<std::size_t>(i)]
                             .real();
            double rowsum = 0.0;
            for (double v : pat.rows[static_cast<std::size_t>(m - 1)]) rowsum += v;
            vt = std::max(vt, std::abs(rowsum - trace));
        }

        double vl = 0.0;
        for (int i = 0; i < n; ++i)
            vl = std::max(vl, std::abs(pat.rows[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(i)] -
                                       lam[static_cast<std::size_t>(i)]));

        rep.max_interlacing_violation = std::max(rep.max_interlacing_violation, vi);
        rep.max_trace_violation = std::max(rep.max_trace_violation, vt);
        if (vi > tol || vt > tol || vl > kSpectrumTol) ++rep.failures;
    }
    return rep;
}

bool contains_widened(const GCPolytope& P, const FloatPattern& pat, double tol) {
    if (static_cast<int>(pat.rows.size()) != P.n())
        throw UsageError("oracle: pattern size disagrees with the polytope");
    GCPoint u;
    u.coords.reserve(P.variables.size());
    for (const auto& [i, j] : P.variables)
        u.coords.push_back(rational_from_double(
            pat.rows[static_cast<std::size_t>(i + j - 2)][static_cast<std::size_t>(i - 1)]));
    const Rational slack = rational_from_double(tol);
    for (const Inequality& iq : P.inequalities)
        if (P.eval(iq.hi, u) - P.eval(iq.lo, u) < -slack) return false;
    return true;
}

nlohmann::ordered_json report_to_json(const OracleReport& r) {
    nlohmann::ordered_json j;
    j["samples"] = r.samples;
    j["failures"] = r.failures;
    j["max_interlacing_violation"] = r.max_interlacing_violation;
    j["max_trace_violation"] = r.max_trace_violation;
    j["tolerance"] = r.tolerance;
    j["seed"] = r.seed;
    return j;
}

}  // namespace gcl
