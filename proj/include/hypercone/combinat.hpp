#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "rational.hpp"

namespace hypercone {

using Subset = std::vector<int>;  // strictly increasing elements of [n] = {1..n}
using Word = std::vector<int>;    // distinct letters from [n], order significant

// All d-subsets of [n] in lexicographic order, with rank/unrank.
class SubsetTable {
public:
    SubsetTable() : n_(0), d_(0) {}
    SubsetTable(int n, int d) : n_(n), d_(d) {
        if (d < 0 || d > n) throw std::invalid_argument("subsets: need 0 <= d <= n");
        Subset cur(d);
        for (int i = 0; i < d; ++i) cur[i] = i + 1;
        while (true) {
            list_.push_back(cur);
            rank_[cur] = list_.size() - 1;
            int i = d - 1;
            while (i >= 0 && cur[i] == n - (d - 1 - i)) --i;
            if (i < 0) break;
            ++cur[i];
            for (int j = i + 1; j < d; ++j) cur[j] = cur[j - 1] + 1;
        }
    }

    int n() const { return n_; }
    int d() const { return d_; }
    std::size_t size() const { return list_.size(); }
    const Subset& unrank(std::size_t r) const { return list_.at(r); }
    std::size_t rank(const Subset& s) const {
        auto it = rank_.find(s);
        if (it == rank_.end()) throw std::invalid_argument("subset rank: not in table");
        return it->second;
    }
    const std::vector<Subset>& all() const { return list_; }

private:
    int n_, d_;
    std::vector<Subset> list_;
    std::map<Subset, std::size_t> rank_;
};

inline SubsetTable subsets(int n, int d) { return SubsetTable(n, d); }

inline bool disjoint(const Subset& a, const Subset& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return false;
        (a[i] < b[j]) ? ++i : ++j;
    }
    return true;
}

inline Subset set_union(const Subset& a, const Subset& b) {
    Subset r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

inline Subset set_minus(const Subset& a, int x) {
    Subset r;
    for (int v : a)
        if (v != x) r.push_back(v);
    return r;
}

inline Subset complement(const Subset& a, int n) {
    Subset r;
    std::size_t i = 0;
    for (int v = 1; v <= n; ++v) {
        if (i < a.size() && a[i] == v) ++i;
        else r.push_back(v);
    }
    return r;
}

inline bool contains(const Subset& a, int x) {
    return std::binary_search(a.begin(), a.end(), x);
}

// Adjacency matrix of the Kneser graph K(n, m): vertices are the m-subsets
// of [n] in lex order, entry 1 iff the subsets are disjoint.
inline RatMatrix kneser_adjacency(int n, int m) {
    SubsetTable t(n, m);
    RatMatrix a(t.size(), t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i; j < t.size(); ++j)
            if (disjoint(t.unrank(i), t.unrank(j))) a(i, j) = a(j, i) = 1;
    return a;
}

// All words w_1...w_l with distinct letters from [n] and 0 <= l <= maxlen,
// ordered by length then lexicographically. This indexes the rows of the
// word pencil B(x) for sigma_{d,n} with maxlen = d-1.
class WordTable {
public:
    WordTable() : n_(0), maxlen_(0) {}
    WordTable(int n, int maxlen) : n_(n), maxlen_(maxlen) {
        if (maxlen < 0 || maxlen > n) throw std::invalid_argument("words: bad maxlen");
        Word w;
        emit(w);
        rebuild_rank();
    }

    int n() const { return n_; }
    int maxlen() const { return maxlen_; }
    std::size_t size() const { return list_.size(); }
    const Word& unrank(std::size_t r) const { return list_.at(r); }
    std::size_t rank(const Word& w) const {
        auto it = rank_.find(w);
        if (it == rank_.end()) throw std::invalid_argument("word rank: not in table");
        return it->second;
    }
    const std::vector<Word>& all() const { return list_; }

    static std::string label(const Word& w) {
        if (w.empty()) return "{}";
        std::string s;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(w[i]);
        }
        return s;
    }

private:
    void emit(Word& w) {
        // breadth-first by length, lexicographic within a length
        std::vector<Word> frontier{w};
        list_.push_back(w);
        for (int len = 1; len <= maxlen_; ++len) {
            std::vector<Word> next;
            for (const auto& base : frontier) {
                for (int letter = 1; letter <= n_; ++letter) {
                    if (std::find(base.begin(), base.end(), letter) != base.end()) continue;
                    Word ext = base;
                    ext.push_back(letter);
                    next.push_back(ext);
                }
            }
            std::sort(next.begin(), next.end());
            for (auto& x : next) list_.push_back(x);
            frontier = std::move(next);
        }
    }
    void rebuild_rank() {
        for (std::size_t i = 0; i < list_.size(); ++i) rank_[list_[i]] = i;
    }

    int n_, maxlen_;
    std::vector<Word> list_;
    std::map<Word, std::size_t> rank_;
};

// Word index set of the sigma_{d,n} pencil: lengths 0..d-1.
inline WordTable words(int n, int d) {
    if (d < 1 || d > n) throw std::invalid_argument("words: need 1 <= d <= n");
    return WordTable(n, d - 1);
}

inline std::string subset_label(const Subset& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

}  // namespace hypercone
