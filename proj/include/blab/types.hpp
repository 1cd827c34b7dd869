#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace blab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RowVector = Eigen::RowVectorXcd;
using RealVector = Eigen::VectorXd;

/// Thresholds shared across all rank and symmetry decisions.
/// rank_tol is relative to the spectral radius with an absolute floor of 1;
/// residual_tol bounds max-norm residuals of congruences and symmetry checks.
struct ToleranceSpec {
    double rank_tol = 1e-10;
    double residual_tol = 1e-9;

    double threshold(double spectral_radius) const {
        return rank_tol * std::max(spectral_radius, 1.0);
    }
};

/// Counts of positive / negative / numerically-zero eigenvalues.
struct Inertia {
    int p = 0;
    int q = 0;
    int z = 0;

    int dim() const { return p + q + z; }
    bool positive_definite() const { return q == 0 && z == 0; }
    bool positive_semidefinite() const { return q == 0; }
};

// Error taxonomy. ValidationError covers malformed or out-of-contract
// inputs (CLI exit 2); MathError covers genuine mathematical degeneracy
// reached from valid inputs (CLI exit 3).

class Error : public std::runtime_error {
  public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
    const std::string& name() const { return name_; }

  private:
    std::string name_;
};

class ValidationError : public Error {
  public:
    using Error::Error;
};

class MathError : public Error {
  public:
    using Error::Error;
};

#define BLAB_DEFINE_ERROR(Name, Base)                        \
    class Name : public Base {                               \
      public:                                                \
        explicit Name(const std::string& what)               \
            : Base(#Name, what) {}                           \
    }

BLAB_DEFINE_ERROR(NotHermitian, ValidationError);
BLAB_DEFINE_ERROR(NotFinite, ValidationError);
BLAB_DEFINE_ERROR(RankDeficient, ValidationError);
BLAB_DEFINE_ERROR(RankMismatch, ValidationError);
BLAB_DEFINE_ERROR(SingularNodes, ValidationError);
BLAB_DEFINE_ERROR(NotInSubspace, ValidationError);
BLAB_DEFINE_ERROR(NotPositiveDefinite, ValidationError);
BLAB_DEFINE_ERROR(UnsupportedWeight, ValidationError);
BLAB_DEFINE_ERROR(IoError, ValidationError);

BLAB_DEFINE_ERROR(DegenerateForm, MathError);
BLAB_DEFINE_ERROR(PencilDegenerate, MathError);
BLAB_DEFINE_ERROR(NotPsd, MathError);
BLAB_DEFINE_ERROR(NotInRange, MathError);
BLAB_DEFINE_ERROR(NonpositiveKappa, MathError);
BLAB_DEFINE_ERROR(NotInAE, MathError);
BLAB_DEFINE_ERROR(NoAdmissibleSubspace, MathError);
BLAB_DEFINE_ERROR(ConsistencyViolation, MathError);

#undef BLAB_DEFINE_ERROR

}  // namespace blab
