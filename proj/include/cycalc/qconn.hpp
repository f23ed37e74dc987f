#pragma once

#include "cycalc/homobundle.hpp"
#include "cycalc/pfops.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cycalc {

// Monomials s^e = prod_i c_i(Q)^{e_i} in the Chern classes of the quotient bundle.
struct BasisClass {
    std::string name;
    std::vector<int> s;
    int degree() const;
};

struct TwistedBasis {
    std::vector<BasisClass> classes;
    QMatrix gram;
    QMatrix dual;  // T^a = sum_b dual(a, b) T_b

    std::size_t size() const { return classes.size(); }
    int degree(std::size_t i) const { return classes[i].degree(); }
};

struct Seed {
    std::vector<int> classes;  // one, two or three basis indices
    int d = 0;
    Rational value;
};

struct SeedFile {
    std::vector<BasisClass> basis;
    std::vector<std::pair<std::array<int, 2>, Rational>> pairing;
    std::vector<Seed> seeds;
};

SeedFile seed_file_from_json(const std::string& json);
std::string seed_file_to_json(const SeedFile& f);
const SeedFile& no25_seeds();  // shipped data/no25.json
TargetSpec no25_twist();       // Lambda^2 S* + Lambda^3 Q on G(3,7)
std::vector<int> no25_lines();  // O(1)^2

MPoly basis_lift(const BasisClass& c, int k, int n);
TwistedBasis twisted_pairing(const std::vector<BasisClass>& classes, const TargetSpec& twist);

class CorrelatorTable {
public:
    CorrelatorTable(std::vector<int> degrees, int window_base, int window_step);

    // deg T_i + deg T_j + deg T_k == window_base + window_step * d
    bool in_window(int i, int j, int k, int d) const;
    int max_degree() const { return dmax_; }
    std::size_t size() const { return deg_.size(); }
    std::optional<Rational> get(int i, int j, int k, int d) const;
    Rational at(int i, int j, int k, int d) const;  // throws if unknown
    void set(int i, int j, int k, int d, const Rational& v);
    bool known(int i, int j, int k, int d) const { return get(i, j, k, d).has_value(); }
    std::vector<std::array<int, 4>> unknowns() const;

private:
    static std::array<int, 4> key(int i, int j, int k, int d);
    std::vector<int> deg_;
    int base_, step_, dmax_ = 0;
    std::map<std::array<int, 4>, Rational> values_;
};

CorrelatorTable classical_correlators(const TwistedBasis& basis, const TargetSpec& twist);
CorrelatorTable wdvv_solve(const std::vector<Seed>& seeds, const TwistedBasis& basis, const TargetSpec& twist);
// Sum over all (i,j,k,l,d) of |residual| != 0; returns the first offending instance, if any.
std::optional<std::array<int, 5>> wdvv_violation(const CorrelatorTable& t, const TwistedBasis& basis);

using ConnectionMatrix = PolyMatrix;
ConnectionMatrix connection_matrix(const CorrelatorTable& t, const TwistedBasis& basis);
OreOperator qde_eliminate(const ConnectionMatrix& m);

// Cohomology-valued J_d (z = 1) in the basis, d = 0..order.
std::vector<std::vector<Rational>> j_series(const ConnectionMatrix& m, int order);
std::vector<Rational> j_scalar(const std::vector<std::vector<Rational>>& j);
std::vector<Rational> lefschetz_series(const std::vector<std::vector<Rational>>& j, const ConnectionMatrix& m,
                                       const std::vector<int>& line_degrees);

struct QconnResult {
    TwistedBasis basis;
    ConnectionMatrix matrix;
    OreOperator qde;
    std::vector<Rational> i0;
    std::optional<OreOperator> picard_fuchs;
};

// Full No. 25 pipeline; picard_fuchs is the theta-order 4 annihilator of i0.
QconnResult run_no25(int order);

// P = bvs_transform(qde, lines) against P = A (1/r) R S with A = theta^2 (theta - 1)^2.
struct FactorizationCheck {
    bool divisible = false;  // S right-divides P
    bool identity = false;   // the printed factorization holds exactly
};
FactorizationCheck check_factorization(const OreOperator& qde, const std::vector<int>& lines, const OreOperator& s,
                                       const QPoly& r, const OreOperator& rfac);

std::string matrix_to_json(const ConnectionMatrix& m);

}  // namespace cycalc
