#pragma once

#include <optional>
#include <stop_token>
#include <string>
#include <utility>

#include "moment_lst/functionals.hpp"
#include "moment_lst/laurent.hpp"

namespace mlst {

/// F L = G M + C, with the certificate star_p(L) = a L, star_p(M) = a M,
/// star_p(C) = -a C when one exists.
struct LstTriple {
    LaurentPolynomial l;
    LaurentPolynomial m;
    LaurentPolynomial c;
    std::optional<Symmetry> symmetry;
};

/// Builds a triple and attaches its symmetry certificate.
LstTriple make_triple(LaurentPolynomial l, LaurentPolynomial m, LaurentPolynomial c, const Tolerance& tol = {});

/// (M, L, -C): the same relation read as G M = F L - C.
LstTriple reverse(const LstTriple& t);

/// t = N * s for a unit N.
std::optional<UnitElement> unit_equivalent(const LstTriple& t, const LstTriple& s, const Tolerance& tol = {});

enum class Verdict { Holds, Fails, Unknown };

struct Verification {
    Verdict verdict = Verdict::Unknown;
    /// Moment index (RM) or series exponent (LST) of the first violation.
    std::optional<int> first_failure;
    int order = 0;
    double max_residual = 0.0;
    /// Decided by rational identities rather than a finite window.
    bool exact = false;

    bool holds() const noexcept { return verdict == Verdict::Holds; }
};

/// u L = v M. Rational backends are decided exactly; others are compared
/// on moments |n| <= N inside the available windows.
Verification verify_rm(const HermitianFunctional& u, const HermitianFunctional& v, const LaurentPolynomial& l,
                       const LaurentPolynomial& m, int order = kDefaultOrder, const Tolerance& tol = {},
                       std::stop_token stop = {});

/// F L = G M + C. Rational backends exactly; others coefficientwise through
/// z^N.
Verification verify_lst(const HermitianFunctional& u, const HermitianFunctional& v, const LstTriple& t,
                        int order = kDefaultOrder, const Tolerance& tol = {}, std::stop_token stop = {});

/// C = F L - G M for a verified RM. NotAnRM otherwise.
LstTriple rm_to_lst(const HermitianFunctional& u, const HermitianFunctional& v, const LaurentPolynomial& l,
                    const LaurentPolynomial& m, int order = kDefaultOrder, const Tolerance& tol = {});

/// u Q = 0 with Q = Q^*, F = P / Q, P^{*q} = -P, gcd(P, Q) = 1.
struct DeltaCertificate {
    LaurentPolynomial q;
    LaurentPolynomial p;
};

/// Present iff u is annihilated by a nonzero Laurent polynomial.
/// Unsupported when the Carathéodory series is not known to be rational or not.
std::optional<DeltaCertificate> delta_certificate(const HermitianFunctional& u, const Tolerance& tol = {});

/// (Q, M) with Q self-reciprocal and u Q = leb M. Unsupported unless rational.
std::pair<LaurentPolynomial, LaurentPolynomial> rat_to_leb_rm(const HermitianFunctional& u, const Tolerance& tol = {});

/// Divides by the canonical gcd(L, M, C).
LstTriple minimize_lst(const LstTriple& t, const Tolerance& tol = {});

/// Minimal pair generating every RM between u and v. DeltaAmbiguity if u
/// or v lies in the annihilated class; NotAnRM if u L != v M.
std::pair<LaurentPolynomial, LaurentPolynomial> minimize_rm(const HermitianFunctional& u,
                                                            const HermitianFunctional& v, const LaurentPolynomial& l,
                                                            const LaurentPolynomial& m, int order = kDefaultOrder,
                                                            const Tolerance& tol = {});

enum class ClassTag { FromRM, Wild, Inconclusive };

std::string_view class_tag_name(ClassTag tag) noexcept;

struct Classification {
    ClassTag tag = ClassTag::Inconclusive;
    LstTriple minimal;
    /// Second minimal triple, not unit-proportional, for rational pairs.
    std::optional<LstTriple> witness;
    /// N with (L_*, M_*, C_*) = N (L, M, -C) on the minimal triple.
    std::optional<UnitElement> unit;
    /// An RM pair realizing the relation, when one was constructed.
    std::optional<std::pair<LaurentPolynomial, LaurentPolynomial>> rm;
    std::string reason;
};

/// VerificationFailed when t does not relate u and v.
Classification classify(const HermitianFunctional& u, const HermitianFunctional& v, const LstTriple& t,
                        int order = kDefaultOrder, const Tolerance& tol = {});

/// The functional with CS (G M + C) / L.
HermitianFunctional apply_lst(const HermitianFunctional& v, const LstTriple& t, const Tolerance& tol = {});

struct GeneralDecomposition {
    /// Symmetrized triple (L = L^{*p}).
    LstTriple symmetrized;
    int p = 0;
    LaurentPolynomial m_plus, m_minus, c_plus, c_minus;
    /// u L = v M+ - v^ M- + leb C+ on |n| <= N.
    Verification identity;
    /// u^ L = v M- + v^ M+ + leb C-.
    Verification hat_identity;
};

/// VerificationFailed when either identity fails.
GeneralDecomposition decompose_general(const HermitianFunctional& u, const HermitianFunctional& v, const LstTriple& t,
                                       int order = kDefaultOrder, const Tolerance& tol = {});

/// Minimal LST between two rational functionals.
LstTriple find_lst(const HermitianFunctional& u, const HermitianFunctional& v, const Tolerance& tol = {});

/// A second minimal LST (L, M + K S, C - K R) with G S = R, not
/// unit-proportional to t.
LstTriple rat_nonuniqueness_witness(const HermitianFunctional& u, const HermitianFunctional& v, const LstTriple& t,
                                    const Tolerance& tol = {});

/// Minimal RM between two rational functionals outside the annihilated class.
std::pair<LaurentPolynomial, LaurentPolynomial> find_rm(const HermitianFunctional& u, const HermitianFunctional& v,
                                                        const Tolerance& tol = {});

}  // namespace mlst
