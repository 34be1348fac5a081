#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

// Exact-rational polyhedral computation: conversion between half-space and
// vertex representations by the double description method, with no floating
// point anywhere. Sized for the tiny polytopes of the noncontextuality
// pipelines (ambient dimension <= 18, at most a few dozen vertices).

namespace wvctx::polytope {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Affine form c.x + b; interpreted as c.x + b >= 0 among inequalities and
/// c.x + b = 0 among equalities.
struct LinearForm {
    std::vector<Rational> coeffs;
    Rational constant = 0;
};

struct HRep {
    int dim = 0;
    std::vector<LinearForm> inequalities;
    std::vector<LinearForm> equalities;
};

struct VRep {
    int dim = 0;
    std::vector<std::vector<Rational>> vertices;
};

/// Parse "a/b" or an exact decimal ("0.25", "-3", "1.", ".5").
Rational parse_rational(const std::string& text);

/// Render as "num/den" (denominator always present and positive).
std::string to_fraction_string(const Rational& q);

Rational evaluate(const LinearForm& form, const std::vector<Rational>& point);

/// Scale an inequality by the unique positive rational giving coprime
/// integer entries (orientation preserved).
LinearForm normalize_inequality(LinearForm form);

/// Scale an equality to coprime integer entries with the first nonzero
/// entry positive (orientation is meaningless for equalities).
LinearForm normalize_equality(LinearForm form);

/// Exact vertex enumeration. Throws std::invalid_argument if the polyhedron
/// is unbounded; an infeasible system yields an empty VRep.
VRep hrep_to_vrep(const HRep& h);

/// Irredundant facet description of the convex hull of the given points.
/// Degenerate (lower-dimensional) hulls are reported as affine-hull
/// equalities plus the facets within that affine subspace.
HRep vrep_to_hrep(const VRep& v);

/// True iff some facet of h equals target up to positive rational scaling.
bool facet_contains(const HRep& h, const LinearForm& target);

/// Affine dimension of the point set (-1 for the empty set).
int affine_dimension(const VRep& v);

/// Drop duplicates and sort vertices lexicographically.
VRep canonicalize(VRep v);

}  // namespace wvctx::polytope
