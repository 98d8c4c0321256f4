#pragma once

// Brute-force enumeration oracles for small inputs. These deliberately avoid
// the library's solver path: they walk every vertex-map or cocycle assignment
// entry by entry and count what survives.

#include <set>
#include <vector>

#include "ext.hpp"

namespace karcat::oracle {

// All assignments of `len` entries over F_p, as base-p counters.
class EntryCounter {
public:
    EntryCounter(int p, int len) : p_(p), v_(len, 0), done_(false) {}
    bool done() const { return done_; }
    const std::vector<int>& value() const { return v_; }
    void advance() {
        for (size_t i = 0; i < v_.size(); ++i) {
            if (++v_[i] < p_) return;
            v_[i] = 0;
        }
        done_ = true;
    }

private:
    int p_;
    std::vector<int> v_;
    bool done_;
};

inline int log_p(int p, size_t count) {
    int d = 0;
    size_t c = count;
    while (c > 1) {
        c /= static_cast<size_t>(p);
        ++d;
    }
    return d;
}

// Dimension of Hom(M, N) by enumerating every vertex-map tuple.
inline int hom_dim(const Rep& m, const Rep& n) {
    const Quiver& q = m.quiver();
    const PrimeField& f = m.field();
    int entries = 0;
    for (int v = 0; v < q.vertices(); ++v) entries += n.dim(v) * m.dim(v);
    size_t count = 0;
    for (EntryCounter c(f.modulus(), entries); !c.done(); c.advance()) {
        int off = 0;
        std::vector<Matrix> maps;
        for (int v = 0; v < q.vertices(); ++v) {
            Matrix mv(f, n.dim(v), m.dim(v));
            for (int i = 0; i < mv.rows(); ++i)
                for (int j = 0; j < mv.cols(); ++j) mv.at(i, j) = c.value()[off++];
            maps.push_back(std::move(mv));
        }
        bool ok = true;
        for (int a = 0; a < q.arrows() && ok; ++a)
            ok = n.arrow_map(a) * maps[q.source(a)] == maps[q.target(a)] * m.arrow_map(a);
        if (ok) ++count;
    }
    return log_p(f.modulus(), count);
}

// Every coboundary value, as flattened cocycle vectors.
inline std::set<std::vector<int>> coboundary_set(const Rep& quot, const Rep& sub) {
    const Quiver& q = quot.quiver();
    const PrimeField& f = quot.field();
    int entries = 0;
    for (int v = 0; v < q.vertices(); ++v) entries += sub.dim(v) * quot.dim(v);
    std::set<std::vector<int>> out;
    for (EntryCounter c(f.modulus(), entries); !c.done(); c.advance()) {
        int off = 0;
        std::vector<Matrix> maps;
        for (int v = 0; v < q.vertices(); ++v) {
            Matrix mv(f, sub.dim(v), quot.dim(v));
            for (int i = 0; i < mv.rows(); ++i)
                for (int j = 0; j < mv.cols(); ++j) mv.at(i, j) = c.value()[off++];
            maps.push_back(std::move(mv));
        }
        std::vector<int> flat;
        for (int a = 0; a < q.arrows(); ++a) {
            Matrix blk = maps[q.target(a)] * quot.arrow_map(a) - sub.arrow_map(a) * maps[q.source(a)];
            for (int i = 0; i < blk.rows(); ++i)
                for (int j = 0; j < blk.cols(); ++j) flat.push_back(blk(i, j));
        }
        out.insert(std::move(flat));
    }
    return out;
}

inline int cocycle_entries(const Rep& quot, const Rep& sub) {
    const Quiver& q = quot.quiver();
    int entries = 0;
    for (int a = 0; a < q.arrows(); ++a) entries += sub.dim(q.target(a)) * quot.dim(q.source(a));
    return entries;
}

// dim Ext^1(quot, sub) = dim cocycles - dim coboundaries.
inline int ext_dim(const Rep& quot, const Rep& sub) {
    int entries = cocycle_entries(quot, sub);
    auto cob = coboundary_set(quot, sub);
    return entries - log_p(quot.field().modulus(), cob.size());
}

// dim of the image of E(p, q) acting on classes: enumerate every cocycle,
// apply the blockwise p^* q_* action, and count distinct classes modulo the
// coboundary set.
inline int f_dim(const Rep& quot, const Rep& sub, const std::vector<Matrix>& p_maps,
                 const std::vector<Matrix>& q_maps) {
    const Quiver& qv = quot.quiver();
    const PrimeField& f = quot.field();
    int entries = cocycle_entries(quot, sub);
    auto cob = coboundary_set(quot, sub);
    std::set<std::vector<int>> classes;
    for (EntryCounter c(f.modulus(), entries); !c.done(); c.advance()) {
        int off = 0;
        std::vector<Matrix> blocks;
        for (int a = 0; a < qv.arrows(); ++a) {
            Matrix blk(f, sub.dim(qv.target(a)), quot.dim(qv.source(a)));
            for (int i = 0; i < blk.rows(); ++i)
                for (int j = 0; j < blk.cols(); ++j) blk.at(i, j) = c.value()[off++];
            blocks.push_back(std::move(blk));
        }
        std::vector<int> moved;
        for (int a = 0; a < qv.arrows(); ++a) {
            Matrix blk = q_maps[qv.target(a)] * blocks[a] * p_maps[qv.source(a)];
            for (int i = 0; i < blk.rows(); ++i)
                for (int j = 0; j < blk.cols(); ++j) moved.push_back(blk(i, j));
        }
        // canonical class label: the lexicographically least member of the coset
        std::vector<int> least = moved;
        for (const auto& b : cob) {
            std::vector<int> cand(moved.size());
            for (size_t i = 0; i < moved.size(); ++i) cand[i] = f.sub(moved[i], b[i]);
            if (cand < least) least = cand;
        }
        classes.insert(std::move(least));
    }
    return log_p(f.modulus(), classes.size());
}

}  // namespace karcat::oracle
