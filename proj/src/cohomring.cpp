#include "cycalc/cohomring.hpp"

#include "cycalc/error.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>

namespace cycalc {

// ---------------------------------------------------------------- MPoly

MPoly MPoly::constant(std::size_t nvars, const Rational& c) {
    MPoly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
}

MPoly MPoly::var(std::size_t nvars, std::size_t i, const Rational& c) {
    Exponent e(nvars, 0);
    e.at(i) = 1;
    MPoly p(nvars);
    p.add_term(e, c);
    return p;
}

MPoly MPoly::linear(const std::vector<Rational>& coeffs) {
    MPoly p(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != 0) p += var(coeffs.size(), i, coeffs[i]);
    return p;
}

MPoly MPoly::monomial(const Exponent& e, const Rational& c) {
    MPoly p(e.size());
    p.add_term(e, c);
    return p;
}

bool MPoly::is_homogeneous() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int s = std::accumulate(e.begin(), e.end(), 0);
        if (d >= 0 && s != d) return false;
        d = s;
    }
    return true;
}

int MPoly::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

Rational MPoly::coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void MPoly::add_term(const Exponent& e, const Rational& c) {
    if (c == 0) return;
    if (e.size() != nvars_) fail("MPoly: exponent length mismatch");
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MPoly& MPoly::operator+=(const MPoly& o) {
    if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MPoly& MPoly::operator*=(const Rational& s) {
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r(std::max(a.nvars_, b.nvars_));
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            Exponent e(ea);
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

MPoly MPoly::truncated(int max_degree) const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_)
        if (std::accumulate(e.begin(), e.end(), 0) <= max_degree) r.terms_.emplace(e, c);
    return r;
}

MPoly MPoly::homogeneous_part(int degree) const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_)
        if (std::accumulate(e.begin(), e.end(), 0) == degree) r.terms_.emplace(e, c);
    return r;
}

MPoly MPoly::substitute(const std::vector<MPoly>& images) const {
    if (images.size() != nvars_) fail("MPoly::substitute: wrong number of images");
    std::size_t target = images.empty() ? 0 : images[0].nvars();
    MPoly r(target);
    for (const auto& [e, c] : terms_) {
        MPoly t = constant(target, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t = t * images[i];
        r += t;
    }
    return r;
}

MPoly MPoly::permuted(const std::vector<std::size_t>& perm) const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        Exponent f(nvars_, 0);
        for (std::size_t i = 0; i < nvars_; ++i) f[perm[i]] = e[i];
        r.add_term(f, c);
    }
    return r;
}

Rational MPoly::eval(const std::vector<Rational>& point) const {
    Rational r = 0;
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= point[i];
        r += t;
    }
    return r;
}

MPoly pow(const MPoly& p, unsigned e, int max_degree) {
    MPoly r = MPoly::constant(p.nvars(), 1);
    for (unsigned i = 0; i < e; ++i) {
        r = r * p;
        if (max_degree >= 0) r = r.truncated(max_degree);
    }
    return r;
}

// ---------------------------------------------------------------- monomials

std::uint64_t exponent_key(const Exponent& e) {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] < 0 || e[i] > 255 || i >= 8) fail("exponent out of range for key");
        k |= static_cast<std::uint64_t>(e[i]) << (8 * i);
    }
    return k;
}

std::vector<Exponent> monomials_of_degree(std::size_t nvars, int degree) {
    std::vector<Exponent> out;
    if (nvars == 0) {
        if (degree == 0) out.emplace_back();
        return out;
    }
    Exponent e(nvars, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i + 1 == nvars) {
            e[i] = left;
            out.push_back(e);
            return;
        }
        for (int a = left; a >= 0; --a) {
            e[i] = a;
            rec(i + 1, left - a);
        }
    };
    rec(0, degree);
    return out;
}

// ---------------------------------------------------------------- Ring

RingHandle Ring::make(const RingPresentation& p) {
    std::shared_ptr<Ring> r(new Ring());
    r->pres_ = p;
    r->build();
    return r;
}

void Ring::build() {
    std::size_t n = pres_.generators.size();
    if (pres_.dmax < 0) fail(ErrorCode::invalid_argument, "negative truncation degree");
    if (n > 8) fail(ErrorCode::invalid_argument, "at most 8 generators are supported");
    monomial_ideal_ = true;
    for (const auto& r : pres_.relations) {
        if (r.is_zero()) continue;
        if (r.nvars() != n) fail(ErrorCode::invalid_argument, "relation has wrong number of variables");
        if (!r.is_homogeneous()) fail(ErrorCode::invalid_argument, "relation is not homogeneous");
        if (r.degree() == 0) fail(ErrorCode::invalid_argument, "inconsistent presentation: nonzero constant relation");
        if (r.terms().size() != 1) monomial_ideal_ = false;
    }
    int D = pres_.dmax;
    basis_.assign(D + 1, {});
    monomials_.assign(D + 1, {});
    basis_index_.assign(D + 1, {});
    mono_index_.assign(D + 1, {});
    reduced_.assign(D + 1, QMatrix());
    pivot_of_col_.assign(D + 1, {});
    for (int m = 0; m <= D; ++m) {
        monomials_[m] = monomials_of_degree(n, m);
        for (std::size_t i = 0; i < monomials_[m].size(); ++i) mono_index_[m][exponent_key(monomials_[m][i])] = i;
        std::size_t cols = monomials_[m].size();
        std::vector<std::size_t> pivot_of_col(cols, SIZE_MAX);
        if (monomial_ideal_) {
            for (std::size_t c = 0; c < cols; ++c) {
                const Exponent& e = monomials_[m][c];
                for (const auto& r : pres_.relations) {
                    if (r.is_zero()) continue;
                    const Exponent& re = r.terms().begin()->first;
                    bool divides = true;
                    for (std::size_t i = 0; i < n; ++i)
                        if (re[i] > e[i]) divides = false;
                    if (divides) {
                        pivot_of_col[c] = 0;
                        break;
                    }
                }
            }
        } else {
            std::vector<std::vector<Rational>> rows;
            for (const auto& r : pres_.relations) {
                if (r.is_zero() || r.degree() > m) continue;
                for (const auto& u : monomials_of_degree(n, m - r.degree())) {
                    std::vector<Rational> row(cols);
                    for (const auto& [e, c] : r.terms()) {
                        Exponent f(e);
                        for (std::size_t i = 0; i < n; ++i) f[i] += u[i];
                        row[mono_index_[m].at(exponent_key(f))] += c;
                    }
                    rows.push_back(std::move(row));
                }
            }
            QMatrix a(rows.size(), cols);
            for (std::size_t i = 0; i < rows.size(); ++i)
                for (std::size_t j = 0; j < cols; ++j) a(i, j) = rows[i][j];
            auto pivots = rref(a);
            QMatrix red(pivots.size(), cols);
            for (std::size_t i = 0; i < pivots.size(); ++i) {
                for (std::size_t j = 0; j < cols; ++j) red(i, j) = a(i, j);
                pivot_of_col[pivots[i]] = i;
            }
            reduced_[m] = std::move(red);
        }
        for (std::size_t c = 0; c < cols; ++c)
            if (pivot_of_col[c] == SIZE_MAX) {
                basis_index_[m][exponent_key(monomials_[m][c])] = basis_[m].size();
                basis_[m].push_back(monomials_[m][c]);
            }
        pivot_of_col_[m] = std::move(pivot_of_col);
    }
}

std::vector<std::size_t> Ring::dims() const {
    std::vector<std::size_t> d;
    for (const auto& b : basis_) d.push_back(b.size());
    return d;
}

const std::vector<std::pair<std::size_t, Rational>>& Ring::normal_form(const Exponent& e) const {
    static const std::vector<std::pair<std::size_t, Rational>> empty;
    int m = std::accumulate(e.begin(), e.end(), 0);
    if (m > pres_.dmax) return empty;
    std::uint64_t key = exponent_key(e);
    auto bit = basis_index_[m].find(key);
    auto it = nf_cache_.find(key);
    if (it != nf_cache_.end()) return it->second;
    std::vector<std::pair<std::size_t, Rational>> nf;
    if (bit != basis_index_[m].end()) {
        nf.emplace_back(bit->second, Rational(1));
    } else if (!monomial_ideal_) {
        std::size_t col = mono_index_[m].at(key);
        std::size_t row = pivot_of_col_[m][col];
        const QMatrix& red = reduced_[m];
        for (std::size_t j = 0; j < red.cols(); ++j) {
            if (j == col || red(row, j) == 0) continue;
            auto b = basis_index_[m].find(exponent_key(monomials_[m][j]));
            if (b == basis_index_[m].end()) continue;
            nf.emplace_back(b->second, -red(row, j));
        }
    }
    return nf_cache_.emplace(key, std::move(nf)).first->second;
}

RingElement Ring::zero() const {
    std::vector<std::vector<Rational>> comps;
    for (const auto& b : basis_) comps.emplace_back(b.size());
    return RingElement(shared_from_this(), std::move(comps));
}

RingElement Ring::one() const {
    RingElement r = zero();
    if (!basis_.empty() && !basis_[0].empty()) r.component(0)[0] = 1;
    return r;
}

RingElement Ring::gen(std::size_t i) const {
    std::vector<Rational> c(nvars());
    c.at(i) = 1;
    return linear(c);
}

RingElement Ring::from_poly(const MPoly& p) const {
    RingElement r = zero();
    for (const auto& [e, c] : p.terms()) {
        int m = std::accumulate(e.begin(), e.end(), 0);
        if (m > pres_.dmax) continue;
        for (const auto& [idx, v] : normal_form(e)) r.component(m)[idx] += c * v;
    }
    return r;
}

RingElement Ring::linear(const std::vector<Rational>& coeffs) const {
    return from_poly(MPoly::linear(coeffs));
}

// ---------------------------------------------------------------- RingElement

RingElement::RingElement(RingHandle ring, std::vector<std::vector<Rational>> comps)
    : ring_(std::move(ring)), comps_(std::move(comps)) {}

bool RingElement::is_zero() const {
    for (int m = 0; m <= dmax(); ++m)
        if (!is_zero_in_degree(m)) return false;
    return true;
}

bool RingElement::is_zero_in_degree(int degree) const {
    for (const auto& c : comps_.at(degree))
        if (c != 0) return false;
    return true;
}

int RingElement::top_degree() const {
    for (int m = dmax(); m >= 0; --m)
        if (!is_zero_in_degree(m)) return m;
    return -1;
}

RingElement RingElement::degree_part(int degree) const {
    RingElement r = ring_->zero();
    if (degree >= 0 && degree <= dmax()) r.comps_[degree] = comps_[degree];
    return r;
}

RingElement RingElement::truncated(int max_degree) const {
    RingElement r = *this;
    for (int m = max_degree + 1; m <= dmax(); ++m)
        for (auto& c : r.comps_[m]) c = 0;
    return r;
}

RingElement& RingElement::operator+=(const RingElement& o) {
    if (ring_ != o.ring_) fail("ring mismatch in addition");
    for (std::size_t m = 0; m < comps_.size(); ++m)
        for (std::size_t i = 0; i < comps_[m].size(); ++i)
            if (o.comps_[m][i] != 0) comps_[m][i] += o.comps_[m][i];
    return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
    if (ring_ != o.ring_) fail("ring mismatch in subtraction");
    for (std::size_t m = 0; m < comps_.size(); ++m)
        for (std::size_t i = 0; i < comps_[m].size(); ++i)
            if (o.comps_[m][i] != 0) comps_[m][i] -= o.comps_[m][i];
    return *this;
}

RingElement& RingElement::operator*=(const Rational& s) {
    for (auto& comp : comps_)
        for (auto& c : comp) c *= s;
    return *this;
}

RingElement operator*(const RingElement& a, const RingElement& b) {
    if (a.ring_ != b.ring_) fail("ring mismatch in multiplication");
    const Ring& R = *a.ring_;
    RingElement r = R.zero();
    int D = R.dmax();
    Exponent e(R.nvars());
    for (int i = 0; i <= D; ++i) {
        const auto& ai = a.comps_[i];
        for (int j = 0; i + j <= D; ++j) {
            const auto& bj = b.comps_[j];
            for (std::size_t s = 0; s < ai.size(); ++s) {
                if (ai[s] == 0) continue;
                const Exponent& es = R.basis(i)[s];
                for (std::size_t t = 0; t < bj.size(); ++t) {
                    if (bj[t] == 0) continue;
                    const Exponent& et = R.basis(j)[t];
                    for (std::size_t v = 0; v < e.size(); ++v) e[v] = es[v] + et[v];
                    Rational st = ai[s] * bj[t];
                    for (const auto& [idx, c] : R.normal_form(e)) r.comps_[i + j][idx] += st * c;
                }
            }
        }
    }
    return r;
}

MPoly RingElement::to_poly() const {
    MPoly p(ring_->nvars());
    for (int m = 0; m <= dmax(); ++m)
        for (std::size_t i = 0; i < comps_[m].size(); ++i)
            if (comps_[m][i] != 0) p.add_term(ring_->basis(m)[i], comps_[m][i]);
    return p;
}

RingElement pow(const RingElement& a, unsigned e) {
    RingElement r = a.ring()->one();
    for (unsigned i = 0; i < e; ++i) r = r * a;
    return r;
}

WeightedElement& WeightedElement::operator+=(const WeightedElement& o) {
    if (value.ring() == nullptr) {
        *this = o;
        return *this;
    }
    if (o.value.ring() == nullptr) return *this;
    if (weight != o.weight) fail("homogeneity violation: adding z-weights " + std::to_string(weight) + " and " + std::to_string(o.weight));
    value += o.value;
    return *this;
}

// ---------------------------------------------------------------- tableaux, partitions

std::vector<Exponent> ssyt_contents(const Partition& lambda, std::size_t k) {
    std::vector<Exponent> out;
    std::vector<int> parts;
    for (int p : lambda)
        if (p > 0) parts.push_back(p);
    if (parts.size() > k) return out;
    std::vector<std::vector<int>> t(parts.size());
    for (std::size_t r = 0; r < parts.size(); ++r) t[r].assign(parts[r], 0);
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t r = 0; r < parts.size(); ++r)
        for (int c = 0; c < parts[r]; ++c) cells.emplace_back(r, c);
    Exponent content(k, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t idx) {
        if (idx == cells.size()) {
            out.push_back(content);
            return;
        }
        auto [r, c] = cells[idx];
        int lo = 1;
        if (c > 0) lo = std::max(lo, t[r][c - 1]);
        if (r > 0) lo = std::max(lo, t[r - 1][c] + 1);
        for (int v = lo; v <= static_cast<int>(k); ++v) {
            t[r][c] = v;
            ++content[v - 1];
            rec(idx + 1);
            --content[v - 1];
        }
    };
    rec(0);
    return out;
}

Partition conjugate(const Partition& lambda) {
    Partition c;
    int first = lambda.empty() ? 0 : lambda[0];
    for (int j = 0; j < first; ++j) {
        int cnt = 0;
        for (int p : lambda)
            if (p > j) ++cnt;
        c.push_back(cnt);
    }
    return c;
}

Integer hook_content_dimension(const Partition& lambda, std::size_t k) {
    Partition conj = conjugate(lambda);
    Integer num = 1, den = 1;
    for (std::size_t i = 0; i < lambda.size(); ++i)
        for (int j = 0; j < lambda[i]; ++j) {
            long c = static_cast<long>(k) + j - static_cast<long>(i);
            if (c <= 0) return 0;
            num *= c;
            den *= (lambda[i] - j) + (conj[j] - static_cast<int>(i)) - 1;
        }
    return num / den;
}

std::vector<Partition> partitions_of(int n, int max_parts, int max_part) {
    std::vector<Partition> out;
    Partition cur;
    std::function<void(int, int)> rec = [&](int left, int bound) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        if (max_parts >= 0 && static_cast<int>(cur.size()) >= max_parts) return;
        for (int p = std::min(left, bound); p >= 1; --p) {
            cur.push_back(p);
            rec(left - p, p);
            cur.pop_back();
        }
    };
    rec(n, max_part >= 0 ? max_part : n);
    return out;
}

MPoly schur_poly(const Partition& lambda, std::size_t nvars, const std::vector<std::size_t>& vars) {
    MPoly p(nvars);
    for (const auto& content : ssyt_contents(lambda, vars.size())) {
        Exponent e(nvars, 0);
        for (std::size_t i = 0; i < vars.size(); ++i) e.at(vars[i]) += content[i];
        p.add_term(e, 1);
    }
    return p;
}

RingElement schur(const RingHandle& ring, const Partition& lambda, const std::vector<std::size_t>& vars) {
    return ring->from_poly(schur_poly(lambda, ring->nvars(), vars));
}

RingPresentation projective_power_presentation(std::size_t k, int n, int dmax) {
    RingPresentation p;
    for (std::size_t i = 0; i < k; ++i) {
        p.generators.push_back("H" + std::to_string(i + 1));
        Exponent e(k, 0);
        e[i] = n;
        p.relations.push_back(MPoly::monomial(e));
    }
    p.dmax = dmax;
    return p;
}

// ---------------------------------------------------------------- integration

namespace {

const MPoly& root_product(std::size_t k) {
    static std::mutex mu;
    static std::map<std::size_t, MPoly> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    MPoly v = MPoly::constant(k, 1);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (i != j) v = v * (MPoly::var(k, i) - MPoly::var(k, j));
    return cache.emplace(k, std::move(v)).first->second;
}

}  // namespace

Rational integrate_grassmann(const MPoly& f, std::size_t k, int n) {
    if (f.is_zero()) return 0;
    if (f.nvars() != k) fail(ErrorCode::invalid_argument, "integrand has wrong number of variables");
    if (!f.is_homogeneous()) fail(ErrorCode::invalid_argument, "integrand not of pure degree");
    if (f.degree() != static_cast<int>(k) * (n - static_cast<int>(k))) return 0;
    const MPoly& v = root_product(k);
    Rational total = 0;
    Exponent need(k);
    for (const auto& [e, c] : f.terms()) {
        bool ok = true;
        for (std::size_t i = 0; i < k; ++i) {
            need[i] = n - 1 - e[i];
            if (need[i] < 0) ok = false;
        }
        if (ok) total += c * v.coeff(need);
    }
    Integer fact = 1;
    for (std::size_t i = 2; i <= k; ++i) fact *= static_cast<unsigned long>(i);
    return canonical(total / Rational(fact));
}

Rational integrate_grassmann(const RingElement& f, std::size_t k, int n) {
    int nonzero = 0;
    for (int m = 0; m <= f.dmax(); ++m)
        if (!f.is_zero_in_degree(m)) ++nonzero;
    if (nonzero > 1) fail(ErrorCode::invalid_argument, "integrand not of pure degree");
    return integrate_grassmann(f.to_poly(), k, n);
}

}  // namespace cycalc
