#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "moment_lst/functionals.hpp"
#include "moment_lst/laurent.hpp"
#include "moment_lst/transforms.hpp"

namespace mlst {

/// (deg A, deg B, deg C), t absent when C = 0.
struct LstClass {
    int r = 0;
    int s = 0;
    std::optional<int> t;

    std::string to_string() const;
    friend bool operator==(const LstClass&, const LstClass&) = default;
};

/// F A = G B + C over ordinary polynomials with (A(0), B(0), C(0)) != 0.
struct PolyLst {
    LaurentPolynomial a;
    LaurentPolynomial b;
    LaurentPolynomial c;

    LstClass lst_class() const;
};

/// Shifts by the unit z^k that makes every exponent >= 0 and some constant
/// term nonzero.
PolyLst normalize(const LstTriple& t);

enum class StepKind { C000, C10, C01 };

std::string_view step_kind_name(StepKind kind) noexcept;

/// One elementary relation X A = Y B + c between consecutive functionals of a
/// chain. `input` is X, `output` is Y.
struct ElementaryStep {
    StepKind kind = StepKind::C000;
    LaurentPolynomial a;
    LaurentPolynomial b;
    Scalar c;
    Scalar input_mu0;
    Scalar output_mu0;
    /// Carathéodory coefficients of X and Y through the working order; the
    /// chain check compares them between neighbouring steps.
    PowerSeries input_cs;
    PowerSeries output_cs;
    /// Present when the step was produced by decompose.
    std::optional<HermitianFunctional> input;
    std::optional<HermitianFunctional> output;

    /// Kind implied by the degrees, if elementary.
    std::optional<StepKind> implied_kind() const;
};

enum class Side { F, G };

struct SplitResult {
    ElementaryStep step;
    PolyLst residual;
    /// The new functional replacing u (F side) or v (G side).
    HermitianFunctional replacement;
};

/// Peels a normalized linear factor off A (F side: F A0 = F~ + c) or B
/// (G side: G~ = G B0). `f` is the functional on the chosen side.
/// NoDegreeToSplit when that polynomial is constant; NoLinearFactor when no
/// root lies in Q(i) in exact mode.
SplitResult split_linear(const PolyLst& p, Side side, const HermitianFunctional& f, int order = kDefaultOrder,
                         const Tolerance& tol = {});

struct ReduceResult {
    /// F-side steps first, then G-side steps, in chain order.
    std::vector<ElementaryStep> f_steps;
    std::vector<ElementaryStep> g_steps;
    PolyLst residual;
    HermitianFunctional u_tilde;
    HermitianFunctional v_tilde;
};

/// One (0,0,t) -> (0,0,t-1) reduction. DegenerateConstantFunctional when F or
/// G is constant through the working order.
ReduceResult reduce_00t(const PolyLst& p, const HermitianFunctional& u, const HermitianFunctional& v,
                        int order = kDefaultOrder, const Tolerance& tol = {});

/// Elementary chain from u to v whose composition is t up to a unit.
std::vector<ElementaryStep> decompose(const LstTriple& t, const HermitianFunctional& u, const HermitianFunctional& v,
                                      int order = kDefaultOrder, const Tolerance& tol = {});

struct Recomposition {
    LstTriple triple;
    Verification verification;
};

/// Composes (A,B,C) o (A',B',C') = (AA', BB', C'B + CA') along the chain.
/// ChainMismatch when neighbouring steps do not share a functional.
Recomposition recompose(const std::vector<ElementaryStep>& steps, int order = kDefaultOrder,
                        const Tolerance& tol = {});

/// Agreement at the coefficient of z^exponent in the Laurent series of both
/// sides, i.e. at moment index -exponent.
struct RelationRow {
    int exponent = 0;
    bool general = false;
    /// Which split formula applies: "PP" (exponent >= 0), "PP_*" (exponent
    /// < 0) or "scalar" for the constant-term relation at exponent 0.
    std::string split_side;
    bool split = false;
};

struct RelationReport {
    StepKind kind = StepKind::C000;
    std::vector<RelationRow> rows;
    bool all_hold = true;
};

/// Moment-level form of an elementary step between X = u and Y = v.
/// ConstraintViolation when the reality conditions on the coefficients fail.
RelationReport elementary_relation(const ElementaryStep& step, const HermitianFunctional& u,
                                   const HermitianFunctional& v, int order = 16, const Tolerance& tol = {});

/// Roots of an ordinary polynomial of degree >= 1 (companion matrix).
std::vector<std::complex<double>> approximate_roots(const LaurentPolynomial& p);

/// A root in Q(i), if one exists and is found by rational reconstruction of
/// the numeric roots.
std::optional<Scalar> exact_root(const LaurentPolynomial& p);

}  // namespace mlst
