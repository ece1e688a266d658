#include "vflab/linsolve.hpp"

#include <algorithm>

namespace vflab {

SparseVec sparse_from_map(const std::map<std::uint64_t, Rational, std::greater<>>& m) {
    SparseVec v;
    v.reserve(m.size());
    for (const auto& [k, c] : m)
        if (!c.is_zero()) v.emplace_back(k, c);
    return v;
}

void sparse_axpy(SparseVec& target, const Rational& c, const SparseVec& source) {
    if (c.is_zero() || source.empty()) return;
    SparseVec out;
    out.reserve(target.size() + source.size());
    std::size_t i = 0, j = 0;
    while (i < target.size() && j < source.size()) {
        if (target[i].first > source[j].first) {
            out.push_back(std::move(target[i++]));
        } else if (target[i].first < source[j].first) {
            out.emplace_back(source[j].first, c * source[j].second);
            ++j;
        } else {
            Rational v = target[i].second + c * source[j].second;
            if (!v.is_zero()) out.emplace_back(target[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    while (i < target.size()) out.push_back(std::move(target[i++]));
    for (; j < source.size(); ++j) out.emplace_back(source[j].first, c * source[j].second);
    target = std::move(out);
}

void EchelonBasis::reduce(SparseVec& v, SparseVec* prov) const {
    // Full reduction: eliminate every entry sitting on a pivot key.  An
    // elimination at position k only touches strictly smaller keys, so a
    // single left-to-right sweep suffices.
    std::size_t k = 0;
    while (k < v.size()) {
        auto it = pivot_.find(v[k].first);
        if (it == pivot_.end()) {
            ++k;
            continue;
        }
        Rational c = -v[k].second;
        sparse_axpy(v, c, rows_[it->second]);
        if (prov && track_) sparse_axpy(*prov, c, prov_[it->second]);
    }
}

bool EchelonBasis::insert(SparseVec v, SparseVec prov) {
    reduce(v, &prov);
    if (v.empty()) return false;
    Rational inv = v.front().second.inverse();
    if (!inv.is_one()) {
        for (auto& [k, c] : v) c *= inv;
        if (track_)
            for (auto& [k, c] : prov) c *= inv;
    }
    pivot_.emplace(v.front().first, rows_.size());
    rows_.push_back(std::move(v));
    if (track_) prov_.push_back(std::move(prov));
    return true;
}

std::optional<AffineSolution> solve_dense(std::vector<std::vector<Rational>> rows,
                                          std::vector<Rational> rhs) {
    const std::size_t m = rows.size();
    const std::size_t n = m == 0 ? 0 : rows[0].size();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        while (p < m && rows[p][c].is_zero()) ++p;
        if (p == m) continue;
        std::swap(rows[p], rows[r]);
        std::swap(rhs[p], rhs[r]);
        Rational inv = rows[r][c].inverse();
        for (std::size_t j = c; j < n; ++j) rows[r][j] *= inv;
        rhs[r] *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            Rational f = rows[i][c];
            for (std::size_t j = c; j < n; ++j) rows[i][j] -= f * rows[r][j];
            rhs[i] -= f * rhs[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < m; ++i)
        if (!rhs[i].is_zero()) return std::nullopt;

    AffineSolution sol;
    sol.particular.assign(n, Rational(0));
    std::vector<bool> is_pivot(n, false);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
        sol.particular[pivot_col[i]] = rhs[i];
        is_pivot[pivot_col[i]] = true;
    }
    for (std::size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Rational> null(n, Rational(0));
        null[c] = Rational(1);
        for (std::size_t i = 0; i < pivot_col.size(); ++i) null[pivot_col[i]] = -rows[i][c];
        sol.nullspace.push_back(std::move(null));
    }
    return sol;
}

std::vector<Rational> poly_trim(std::vector<Rational> v) {
    while (!v.empty() && v.back().is_zero()) v.pop_back();
    return v;
}

std::vector<Rational> poly_gcd(std::vector<Rational> a, std::vector<Rational> b) {
    a = poly_trim(std::move(a));
    b = poly_trim(std::move(b));
    while (!b.empty()) {
        // a mod b
        std::vector<Rational> r = a;
        while (r.size() >= b.size()) {
            Rational q = r.back() / b.back();
            std::size_t off = r.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) r[off + i] -= q * b[i];
            r = poly_trim(std::move(r));
            if (r.empty()) break;
        }
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rational inv = a.back().inverse();
        for (auto& c : a) c *= inv;
    }
    return a;
}

}  // namespace vflab
