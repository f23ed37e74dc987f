#pragma once

#include "cycalc/cohomring.hpp"
#include "cycalc/homobundle.hpp"

#include <functional>
#include <string>
#include <vector>

namespace cycalc {

using DegreeVector = std::vector<int>;

// Linear class in the abelian ring together with its degree pairing <L, d>.
struct LinearClass {
    std::vector<Rational> cls;
    std::vector<int> pairing;
    int mult = 1;

    int degree(const DegreeVector& d) const;
};

struct ToricData {
    std::string name;
    RingHandle ring;  // abelian ring truncated at |Phi+| + 3
    std::vector<LinearClass> divisors;
    std::vector<LinearClass> bundles;
    std::vector<LinearClass> roots;
    int weyl_order = 1;
    std::function<int(const DegreeVector&)> sign;    // epsilon(d)
    std::function<int(const DegreeVector&)> height;  // h(d)
    std::function<bool(const DegreeVector&)> in_cone;
    std::function<std::vector<DegreeVector>(int)> enumerate;

    // Weyl-invariant lifts of a basis of H^{<=6} of the quotient, graded by degree.
    std::vector<RingElement> lifts;
    std::vector<int> lift_degree;
    std::vector<std::string> lift_names;
    // Twisted pairing of each lift against H^{3-deg}, divided by the pairing of H^3.
    std::vector<Rational> lift_pairing;

    int positive_roots() const { return static_cast<int>(roots.size()); }
};

// Abelianization (P^{n-1})^k of G(k,n) for a spec whose carriers are S* and O only.
ToricData grassmann_toric_data(const TargetSpec& spec);
// P_Delta quotient for the determinantal net of conics (catalog row 18).
ToricData pdelta_toric_data();

WeightedElement toric_coeff(const ToricData& td, const DegreeVector& d);
std::vector<DegreeVector> enumerate_degrees(const ToricData& td, int total);
WeightedElement abelianized_numerator(const ToricData& td, int total);
RingElement omega(const ToricData& td);
// Coefficients on td.lifts of a / omega in degrees 0..3.
std::vector<Rational> omega_divide(const ToricData& td, const WeightedElement& a);

struct IScalarSeries {
    std::string target;
    int order = 0;
    bool conjectural = false;
    std::vector<Rational> I0, I1red, I2red, I3red;

    bool operator==(const IScalarSeries&) const = default;
};

// Exact pipeline through the abelian ring; slow beyond low orders.
IScalarSeries reference_series(const ToricData& td, int order);

// Fast Grassmannian path: determinant extraction of Schur coefficients over Z/p.
bool grassmann_fast_applicable(const TargetSpec& spec);
IScalarSeries grassmann_fast_series(const TargetSpec& spec, int order);

// Fast P_Delta path: evaluation of anti-invariant parts along lines over Z/p.
IScalarSeries pdelta_series(int order);

// Dispatches S*/Q specs (dualizing Q-only specs) to the fastest applicable path.
IScalarSeries i_series(const TargetSpec& spec, int order);

// Coefficients of tau - t = I1red / I0.
std::vector<Rational> mirror_map(const IScalarSeries& s);

std::string series_to_json(const IScalarSeries& s);
IScalarSeries series_from_json(const std::string& json);

}  // namespace cycalc
