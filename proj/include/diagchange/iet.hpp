#pragma once

#include <string>
#include <utility>
#include <vector>

#include "quad.hpp"
#include "word.hpp"

namespace dc {

struct IETPoint {
    int component = 1;
    Scalar x;

    friend bool operator==(const IETPoint&, const IETPoint&) = default;
};

// Bipartite interval exchange: I_i = (l_i, r_i) is cut at 0 into the wedge
// projections and at l_i + r_{pi_l(i)} into the two pieces that translate.
class BipartiteIET {
public:
    BipartiteIET(Datum datum, std::vector<std::pair<Scalar, Scalar>> lambdas)
        : datum_(std::move(datum)), lambdas_(std::move(lambdas)) {
        if (static_cast<int>(lambdas_.size()) != datum_.k()) throw ValidationFailed("need one length pair per index");
        for (int i = 1; i <= k(); ++i) {
            if (left(i).sign() >= 0 || right(i).sign() <= 0) {
                throw ValidationFailed("length signs at i=" + std::to_string(i));
            }
            Scalar via_left = left(i) + right(datum_.left()(i));
            Scalar via_right = right(i) + left(datum_.right()(i));
            if (via_left != via_right) throw ValidationFailed("length train-track at i=" + std::to_string(i));
            // the cut point separates the interval into two non-empty pieces
            if (!(left(i) < via_left && via_left < right(i))) {
                throw ValidationFailed("cut point outside interval at i=" + std::to_string(i));
            }
        }
    }

    int k() const { return datum_.k(); }
    const Datum& datum() const { return datum_; }
    const std::vector<std::pair<Scalar, Scalar>>& lambdas() const { return lambdas_; }
    const Scalar& left(int i) const { return lambdas_[i - 1].first; }
    const Scalar& right(int i) const { return lambdas_[i - 1].second; }
    Scalar cut(int i) const { return left(i) + right(datum_.left()(i)); }

    bool contains(const IETPoint& p) const {
        return p.component >= 1 && p.component <= k() && left(p.component) < p.x && p.x < right(p.component);
    }

private:
    Datum datum_;
    std::vector<std::pair<Scalar, Scalar>> lambdas_;
};

inline BipartiteIET iet_of(const Quadrangulation& q) {
    std::vector<std::pair<Scalar, Scalar>> lam;
    for (const Wedge& w : q.wedges) lam.emplace_back(w.left.x, w.right.x);
    return {q.datum, std::move(lam)};
}

// J_{i,l} = (l_i, cut) goes onto I_{pi_l(i),r}; J_{i,r} = (cut, r_i) onto I_{pi_r(i),l}.
inline IETPoint iet_apply(const BipartiteIET& t, const IETPoint& p) {
    if (!t.contains(p)) throw std::invalid_argument("point outside the interval of component " + std::to_string(p.component));
    const int i = p.component;
    if (p.x.is_zero()) throw HitsSingularity("point at the wedge vertex of component " + std::to_string(i));
    int c = compare(p.x, t.cut(i));
    if (c == 0) throw HitsSingularity("point at the cut of component " + std::to_string(i));
    if (c < 0) return {t.datum().left()(i), p.x - t.left(i)};
    return {t.datum().right()(i), p.x - t.right(i)};
}

// Wedges with the given x-parts (lambdas) and y-parts (taus).
inline Quadrangulation suspend(const Datum& d, const std::vector<std::pair<Scalar, Scalar>>& lambdas,
                               const std::vector<std::pair<Scalar, Scalar>>& taus) {
    if (static_cast<int>(lambdas.size()) != d.k() || static_cast<int>(taus.size()) != d.k()) {
        throw ValidationFailed("need k length and k height pairs");
    }
    Quadrangulation q{d, {}};
    for (int i = 0; i < d.k(); ++i) {
        q.wedges.push_back({{lambdas[i].first, taus[i].first}, {lambdas[i].second, taus[i].second}});
    }
    if (auto v = validate(q); !v.empty()) throw ValidationFailed(v.front());
    return q;
}

inline Label letter_of(const IETPoint& p) {
    return {p.component, p.x.sign() < 0 ? Side::Left : Side::Right};
}

// Letters of the first n points of the orbit of p.
inline Word cutting_sequence(const Quadrangulation& q, IETPoint p, std::size_t n) {
    BipartiteIET t = iet_of(q);
    Word w;
    for (std::size_t m = 0; m < n; ++m) {
        if (p.x.is_zero()) throw HitsSingularity("orbit at the wedge vertex", static_cast<long>(m));
        w.push_back(letter_of(p));
        if (m + 1 == n) break;
        try {
            p = iet_apply(t, p);
        } catch (const HitsSingularity& e) {
            throw HitsSingularity(e.what(), static_cast<long>(m));
        }
    }
    return w;
}

}  // namespace dc
