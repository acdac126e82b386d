#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "errors.hpp"

namespace dc {

// Permutation of {1..k} in one-line notation. Composition reads right to left:
// (p * q)(i) = p(q(i)).
class Perm {
public:
    Perm() = default;
    explicit Perm(std::vector<int> images) : images_(std::move(images)) {
        std::vector<bool> seen(images_.size() + 1, false);
        for (int v : images_) {
            if (v < 1 || v > size() || seen[v]) {
                throw SyntaxError("not a permutation: " + one_line());
            }
            seen[v] = true;
        }
    }

    static Perm identity(int k) {
        std::vector<int> im(k);
        for (int i = 0; i < k; ++i) im[i] = i + 1;
        return Perm(std::move(im));
    }

    // Cycles given as lists, e.g. {{1,2,3},{4,5}}; unspecified points are fixed.
    static Perm from_cycles(int k, const std::vector<std::vector<int>>& cycles) {
        std::vector<int> im(k);
        for (int i = 0; i < k; ++i) im[i] = i + 1;
        for (const auto& c : cycles) {
            for (std::size_t j = 0; j < c.size(); ++j) {
                int from = c[j];
                int to = c[(j + 1) % c.size()];
                if (from < 1 || from > k || to < 1 || to > k) throw SyntaxError("cycle entry out of range");
                im[from - 1] = to;
            }
        }
        return Perm(std::move(im));
    }

    int size() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_[i - 1]; }
    const std::vector<int>& images() const { return images_; }

    Perm inverse() const {
        std::vector<int> inv(images_.size());
        for (int i = 1; i <= size(); ++i) inv[(*this)(i) - 1] = i;
        return Perm(std::move(inv));
    }

    friend Perm operator*(const Perm& p, const Perm& q) {
        std::vector<int> im(q.images_.size());
        for (int i = 1; i <= q.size(); ++i) im[i - 1] = p(q(i));
        return Perm(std::move(im));
    }

    friend bool operator==(const Perm& p, const Perm& q) { return p.images_ == q.images_; }
    friend bool operator!=(const Perm& p, const Perm& q) { return !(p == q); }
    friend bool operator<(const Perm& p, const Perm& q) { return p.images_ < q.images_; }

    bool is_involution() const {
        for (int i = 1; i <= size(); ++i) {
            if ((*this)((*this)(i)) != i) return false;
        }
        return true;
    }

    bool is_identity() const {
        for (int i = 1; i <= size(); ++i) {
            if ((*this)(i) != i) return false;
        }
        return true;
    }

    // Disjoint cycles, each starting at its minimum, ordered by that minimum.
    std::vector<std::vector<int>> cycles() const {
        std::vector<std::vector<int>> out;
        std::vector<bool> seen(images_.size() + 1, false);
        for (int i = 1; i <= size(); ++i) {
            if (seen[i]) continue;
            std::vector<int> c;
            for (int j = i; !seen[j]; j = (*this)(j)) {
                seen[j] = true;
                c.push_back(j);
            }
            out.push_back(std::move(c));
        }
        return out;
    }

    bool is_full_cycle() const { return cycles().size() == 1; }

    std::string one_line() const {
        std::string s = "[";
        for (std::size_t i = 0; i < images_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(images_[i]);
        }
        return s + "]";
    }

    // Cycle notation with separator sep; fixed points are kept so "(1)(2 3)".
    std::string cycle_string(const std::string& sep = ",", bool show_fixed = true) const {
        std::string s;
        for (const auto& c : cycles()) {
            if (c.size() == 1 && !show_fixed) continue;
            s += "(";
            for (std::size_t j = 0; j < c.size(); ++j) {
                if (j) s += sep;
                s += std::to_string(c[j]);
            }
            s += ")";
        }
        return s.empty() ? "()" : s;
    }

private:
    std::vector<int> images_;
};

// All involutions of {1..k}, generated by pairing the smallest free point.
inline std::vector<Perm> all_involutions(int k) {
    std::vector<Perm> out;
    std::vector<int> im(k, 0);
    auto rec = [&](auto&& self, int) -> void {
        int first = 0;
        for (int i = 1; i <= k; ++i) {
            if (im[i - 1] == 0) {
                first = i;
                break;
            }
        }
        if (first == 0) {
            out.emplace_back(im);
            return;
        }
        im[first - 1] = first;
        self(self, 0);
        for (int j = first + 1; j <= k; ++j) {
            if (im[j - 1] != 0) continue;
            im[first - 1] = j;
            im[j - 1] = first;
            self(self, 0);
            im[j - 1] = 0;
        }
        im[first - 1] = 0;
    };
    rec(rec, 0);
    return out;
}

}  // namespace dc
