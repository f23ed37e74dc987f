#pragma once

#include "cycalc/cohomring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cycalc {

enum class Carrier { SDual, Q, O };

struct BundleSummand {
    Carrier carrier = Carrier::O;
    Partition lambda;
    int twist = 0;

    bool operator==(const BundleSummand&) const = default;
};

struct TargetSpec {
    int k = 0, n = 0;
    std::vector<BundleSummand> summands;
    std::string label;

    int dim() const { return k * (n - k); }
    bool operator==(const TargetSpec&) const = default;
};

struct Invariants {
    Integer h3, c2h, c3;
    bool operator==(const Invariants&) const = default;
};

struct CatalogEntry {
    int number = 0;
    TargetSpec spec;
    std::string bundle;  // display form of the bundle column
    Invariants invariants;
    std::string kuchle;
    std::string database;
    int alias_of = 0;  // row whose computation this row reuses, 0 if none
    std::string alias_note;
};

std::string carrier_name(Carrier c);
Carrier parse_carrier(const std::string& s);

// Weights of the Schur functor of the standard GL(k) representation.
std::vector<Exponent> schur_weights(const Partition& lambda, std::size_t k);

Integer summand_rank(const BundleSummand& s, int k, int n);
Integer rank(const TargetSpec& spec);
bool has_carrier(const TargetSpec& spec, Carrier c);
bool is_mixed(const TargetSpec& spec);

// Throws invalid_argument on malformed partitions or non globally generated summands.
void validate(const TargetSpec& spec);

// G(k,n) = G(n-k,n): swaps S* and Q carriers. Mixed specs are rejected.
TargetSpec dualize(const TargetSpec& spec);

// Line classes of the torus splitting, one weight vector per line, twists included.
std::vector<Exponent> line_weights(const TargetSpec& spec);
RingElement euler_lift(const TargetSpec& spec, const RingHandle& ring);

// Chern classes c_0..c_{min(rank, max_degree)} of a summand as polynomial lifts in H_1..H_k.
std::vector<MPoly> chern_classes(const BundleSummand& s, int k, int n, int max_degree);
MPoly euler_class(const BundleSummand& s, int k, int n);

// Rewrites a symmetric polynomial in r variables in terms of e_1..e_r.
MPoly to_elementary(const MPoly& symmetric);

// Throws invariant_mismatch when rank(E) != dim - 3 or c1(E) != c1(TX).
void check_calabi_yau(const TargetSpec& spec);
Invariants topological_invariants(const TargetSpec& spec);

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_lookup(const std::string& label);  // "no7", "7" or "No. 7"
std::vector<const CatalogEntry*> catalog_filter(int k, int n);

std::string spec_to_json(const TargetSpec& spec);
TargetSpec spec_from_json(const std::string& json);
std::string summand_to_string(const BundleSummand& s);

}  // namespace cycalc
