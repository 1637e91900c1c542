#include "bjortho/core.hpp"

#include "bjortho/lp_norm.hpp"

#include <cmath>

namespace bjortho {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kZeroOperator: return "ZeroOperator";
    case ErrorCode::kNonSmoothExponent: return "NonSmoothExponent";
    case ErrorCode::kInvalidExponent: return "InvalidExponent";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kZeroDenominator: return "ZeroDenominator";
    case ErrorCode::kEmptyAttainment: return "EmptyAttainment";
    case ErrorCode::kCertificateNotFound: return "CertificateNotFound";
    case ErrorCode::kDirectOrthFailed: return "DirectOrthFailed";
    case ErrorCode::kUnknownSuite: return "UnknownSuite";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

PExponent::PExponent(double p) : p_(p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::kInvalidExponent, "p must satisfy 1 <= p <= inf");
}

PExponent PExponent::conjugate() const {
  if (is_one()) return infinity();
  if (is_infinite()) return PExponent(1.0);
  return PExponent(p_ / (p_ - 1.0));
}

void PExponent::require_smooth(const char* where) const {
  if (!smooth()) {
    throw Error(ErrorCode::kNonSmoothExponent,
                std::string(where) + " needs 1 < p < inf, got p = " + std::to_string(p_));
  }
}

Direction::Direction(double theta) : theta_(theta), alpha_(std::polar(1.0, theta)) {
  if (!(theta >= 0.0 && theta < kPi)) {
    throw Error(ErrorCode::kInvalidConfig, "direction angle must lie in [0, pi)");
  }
}

Direction Direction::grid(int k, int n) { return Direction(kPi * k / n); }

void NumericConfig::validate() const {
  if (!(attain_tol > 0) || !(orth_tol > 0)) {
    throw Error(ErrorCode::kInvalidConfig, "attain_tol and orth_tol must be positive");
  }
  if (n_alpha < 2) throw Error(ErrorCode::kInvalidConfig, "n_alpha must be >= 2");
  if (n_starts < 1) throw Error(ErrorCode::kInvalidConfig, "n_starts must be >= 1");
  if (max_iter < 1) throw Error(ErrorCode::kInvalidConfig, "max_iter must be >= 1");
  if (sphere_grid < 2) throw Error(ErrorCode::kInvalidConfig, "sphere_grid must be >= 2");
}

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(mix64(seed) ^ (stream * 0xd1342543de82ef95ULL + 0x632be59bd9b4e019ULL))) {}

std::uint64_t Rng::next_u64() { return mix64(key_ ^ mix64(counter_++)); }

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::gaussian() {
  // Box-Muller; one pair of draws per sample keeps the counter arithmetic simple.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

FieldTag field_of(const CVector& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i).imag() != 0.0) return FieldTag::kComplex;
  }
  return FieldTag::kReal;
}

FieldTag field_of(const COperator& t) {
  for (Eigen::Index j = 0; j < t.cols(); ++j) {
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      if (t(i, j).imag() != 0.0) return FieldTag::kComplex;
    }
  }
  return FieldTag::kReal;
}

CVector sample_unit_vector(int dim, FieldTag field, const PExponent& p, Rng& rng) {
  if (dim < 1) throw Error(ErrorCode::kDimensionMismatch, "dimension must be positive");
  CVector x(dim);
  do {
    for (int i = 0; i < dim; ++i) {
      x(i) = field == FieldTag::kComplex ? rng.complex_gaussian() : Complex(rng.gaussian(), 0.0);
    }
  } while (vector_pnorm(x, p) == 0.0);
  normalize_pnorm(x, p);
  return x;
}

CVector canonical_phase(const CVector& x) {
  Eigen::Index lead = -1;
  double best = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double m = std::abs(x(i));
    if (m > best) {
      best = m;
      lead = i;
    }
  }
  if (lead < 0) throw Error(ErrorCode::kZeroVector, "canonical_phase of the zero vector");
  const Complex unphase = std::conj(x(lead)) / best;
  CVector out = x * unphase;
  out(lead) = Complex(best, 0.0);
  return out;
}

}  // namespace bjortho
