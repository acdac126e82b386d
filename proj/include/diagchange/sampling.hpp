#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "moves.hpp"

namespace dc {

// Random tree of relations on k vertices: each new vertex hangs off an older
// one along a label still free at both ends, then vertices are relabelled.
inline TreeOfRelations random_tree(int k, std::mt19937_64& rng) {
    std::vector<std::array<int, 3>> partner(k + 1, {0, 0, 0});
    for (int v = 2; v <= k; ++v) {
        std::vector<std::pair<int, int>> slots;
        for (int u = 1; u < v; ++u) {
            for (int lab = 0; lab < 3; ++lab) {
                if (partner[u][lab] == 0) slots.emplace_back(u, lab);
            }
        }
        auto [u, lab] = slots[std::uniform_int_distribution<std::size_t>(0, slots.size() - 1)(rng)];
        partner[u][lab] = v;
        partner[v][lab] = u;
    }
    std::vector<int> relabel(k + 1);
    std::iota(relabel.begin(), relabel.end(), 0);
    std::shuffle(relabel.begin() + 1, relabel.end(), rng);
    std::array<std::vector<int>, 3> img;
    for (auto& m : img) m.assign(k, 0);
    for (int v = 1; v <= k; ++v) {
        for (int lab = 0; lab < 3; ++lab) {
            int w = partner[v][lab] ? partner[v][lab] : v;
            img[lab][relabel[v] - 1] = relabel[w];
        }
    }
    return {Perm(img[0]), Perm(img[1]), Perm(img[2])};
}

// Basis of the solutions of l_i + r_{pi_l(i)} = r_i + l_{pi_r(i)} for one
// coordinate; unknowns ordered l_1..l_k, r_1..r_k.
inline std::vector<std::vector<mpq_class>> train_track_nullspace(const Datum& d) {
    const int k = d.k(), n = 2 * k;
    std::vector<std::vector<mpq_class>> rows(k, std::vector<mpq_class>(n, 0));
    for (int i = 1; i <= k; ++i) {
        auto& row = rows[i - 1];
        row[i - 1] += 1;
        row[k + d.left()(i) - 1] += 1;
        row[k + i - 1] -= 1;
        row[d.right()(i) - 1] -= 1;
    }
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < n && r < k; ++c) {
        int p = r;
        while (p < k && rows[p][c] == 0) ++p;
        if (p == k) continue;
        std::swap(rows[p], rows[r]);
        mpq_class inv = 1 / rows[r][c];
        for (auto& x : rows[r]) x *= inv;
        for (int o = 0; o < k; ++o) {
            if (o == r || rows[o][c] == 0) continue;
            mpq_class f = rows[o][c];
            for (int j = 0; j < n; ++j) rows[o][j] -= f * rows[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<std::vector<mpq_class>> basis;
    for (int free = 0; free < n; ++free) {
        if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end()) continue;
        std::vector<mpq_class> v(n, 0);
        v[free] = 1;
        for (std::size_t pr = 0; pr < pivot_col.size(); ++pr) v[pivot_col[pr]] = -rows[pr][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Random valid quadrangulation on d. Coordinates lie in Q(sqrt(discriminant))
// (rational when discriminant is 0). Vertical diagonals are rejected.
inline Quadrangulation random_quadrangulation(const Datum& d, std::mt19937_64& rng, std::int64_t discriminant = 0) {
    const int k = d.k();
    const auto basis = train_track_nullspace(d);
    std::uniform_int_distribution<long> coef(-6, 6);
    auto perturbation = [&]() {
        std::vector<Scalar> p(2 * k);
        for (const auto& v : basis) {
            Scalar c = discriminant == 0 ? Scalar(coef(rng)) : Scalar(mpq_class(coef(rng)), mpq_class(coef(rng)), discriminant);
            for (int j = 0; j < 2 * k; ++j) {
                if (v[j] != 0) p[j] += c * Scalar(v[j]);
            }
        }
        double big = 0;
        for (const Scalar& s : p) big = std::max(big, std::abs(s.to_double()));
        Scalar scale = Scalar::rational(1, static_cast<long>(std::floor(big)) + 2);
        for (Scalar& s : p) s *= scale;
        return p;
    };
    for (;;) {
        auto px = perturbation();
        auto py = perturbation();
        Quadrangulation q{d, std::vector<Wedge>(k)};
        for (int i = 1; i <= k; ++i) {
            q.wedge(i).left = {Scalar(-1) + px[i - 1], Scalar(1) + py[i - 1]};
            q.wedge(i).right = {Scalar(1) + px[k + i - 1], Scalar(1) + py[k + i - 1]};
        }
        if (!is_valid(q)) continue;
        if (!staircase_report(q).vertical.empty()) continue;
        return q;
    }
}

}  // namespace dc
