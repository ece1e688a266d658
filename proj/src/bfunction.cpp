#include "vflab/bfunction.hpp"

#include <sstream>
#include <stdexcept>

namespace vflab {

BFunction BFunction::from_roots(const std::vector<std::pair<Rational, unsigned>>& roots) {
    BFunction b;
    for (const auto& [r, m] : roots) b.add_root(r, m);
    return b;
}

void BFunction::add_root(const Rational& root, unsigned multiplicity) {
    if (multiplicity == 0) return;
    factors_[root] += multiplicity;
}

unsigned BFunction::degree() const {
    unsigned d = 0;
    for (const auto& [r, m] : factors_) d += m;
    return d;
}

unsigned BFunction::multiplicity(const Rational& r) const {
    auto it = factors_.find(r);
    return it == factors_.end() ? 0 : it->second;
}

std::optional<Rational> BFunction::largest_root() const {
    if (factors_.empty()) return std::nullopt;
    return factors_.rbegin()->first;
}

Rational BFunction::evaluate(const Rational& s) const {
    Rational v(1);
    for (const auto& [r, m] : factors_)
        for (unsigned i = 0; i < m; ++i) v *= (s - r);
    return v;
}

std::vector<Rational> BFunction::coefficients() const {
    std::vector<Rational> c{Rational(1)};
    for (const auto& [r, m] : factors_) {
        for (unsigned i = 0; i < m; ++i) {
            // c *= (s - r)
            c.push_back(Rational(0));
            for (std::size_t j = c.size(); j-- > 1;) c[j] = c[j - 1] - c[j] * r;
            c[0] = c[0] * (-r);
        }
    }
    return c;
}

BFunction BFunction::reduced() const {
    BFunction b = *this;
    auto it = b.factors_.find(Rational(-1));
    if (it == b.factors_.end())
        throw std::domain_error("not a b-function of a nonempty hypersurface");
    if (--it->second == 0) b.factors_.erase(it);
    return b;
}

std::string BFunction::str() const {
    if (factors_.empty()) return "1";
    std::ostringstream os;
    auto emit = [&os](const Rational& root, unsigned mult) {
        Rational c = -root;
        if (c.is_zero())
            os << (mult > 1 ? "(s)" : "s");
        else
            os << "(s" << (c.sign() > 0 ? "+" : "-") << c.abs().str() << ")";
        if (mult > 1) os << "^" << mult;
    };
    const Rational minus_one(-1);
    auto it = factors_.find(minus_one);
    if (it != factors_.end()) emit(minus_one, it->second);
    for (auto f = factors_.rbegin(); f != factors_.rend(); ++f) {
        if (f->first == minus_one) continue;
        emit(f->first, f->second);
    }
    return os.str();
}

BFunction shifted_bfunction(const BFunction& b_tilde, unsigned q) {
    BFunction out;
    out.add_root(Rational(-1));
    for (const auto& [r, m] : b_tilde.factors())
        out.add_root(r + Rational((long)q), m);
    return out;
}

std::optional<Rational> minimal_exponent(const BFunction& b) {
    BFunction bt = b.reduced();
    auto r = bt.largest_root();
    if (!r) return std::nullopt;
    return -*r;
}

Rational lct_from_bfunction(const BFunction& b) {
    auto r = b.largest_root();
    if (!r) throw std::domain_error("lct: not a b-function (empty factor list)");
    return -*r;
}

}  // namespace vflab
