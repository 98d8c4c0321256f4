#include "quiver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace karcat {

Quiver::Quiver(int vertices, std::vector<std::pair<int, int>> arrows)
    : vertices_(vertices), arrows_(std::move(arrows)) {
    expect_arg(vertices >= 0, "negative vertex count");
    for (auto [s, t] : arrows_)
        expect_arg(s >= 0 && s < vertices && t >= 0 && t < vertices, "arrow endpoint out of range");
    // Kahn's algorithm; rejects directed cycles.
    std::vector<int> indeg(vertices, 0);
    for (auto [s, t] : arrows_) ++indeg[t];
    std::vector<int> queue;
    for (int v = 0; v < vertices; ++v)
        if (indeg[v] == 0) queue.push_back(v);
    int seen = 0;
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        ++seen;
        for (auto [s, t] : arrows_)
            if (s == v && --indeg[t] == 0) queue.push_back(t);
    }
    expect_arg(seen == vertices, "quiver has a directed cycle");
}

Quiver Quiver::opposite() const {
    std::vector<std::pair<int, int>> rev;
    rev.reserve(arrows_.size());
    for (auto [s, t] : arrows_) rev.emplace_back(t, s);
    return Quiver(vertices_, std::move(rev));
}

Quiver Quiver::linear(int vertices) {
    std::vector<std::pair<int, int>> a;
    for (int i = 0; i + 1 < vertices; ++i) a.emplace_back(i, i + 1);
    return Quiver(vertices, std::move(a));
}

Rep::Rep(Quiver q, PrimeField f, std::vector<int> dims, std::vector<Matrix> arrow_maps)
    : quiver_(std::move(q)), field_(f), dims_(std::move(dims)), arrow_maps_(std::move(arrow_maps)) {
    expect_arg(static_cast<int>(dims_.size()) == quiver_.vertices(), "dims/vertex count mismatch");
    expect_arg(static_cast<int>(arrow_maps_.size()) == quiver_.arrows(), "arrow map count mismatch");
    for (int d : dims_) expect_arg(d >= 0, "negative dimension");
    for (int a = 0; a < quiver_.arrows(); ++a) {
        const Matrix& m = arrow_maps_[a];
        expect_arg(m.rows() == dims_[quiver_.target(a)] && m.cols() == dims_[quiver_.source(a)],
                   "arrow map shape mismatch");
        expect_arg(m.field() == field_, "arrow map field mismatch");
    }
}

Rep Rep::zero(const Quiver& q, PrimeField f) {
    std::vector<int> dims(q.vertices(), 0);
    std::vector<Matrix> maps;
    for (int a = 0; a < q.arrows(); ++a) maps.emplace_back(f, 0, 0);
    return Rep(q, f, std::move(dims), std::move(maps));
}

Rep Rep::simple(const Quiver& q, PrimeField f, int vertex) {
    std::vector<int> dims(q.vertices(), 0);
    dims[vertex] = 1;
    std::vector<Matrix> maps;
    for (int a = 0; a < q.arrows(); ++a)
        maps.emplace_back(f, dims[q.target(a)], dims[q.source(a)]);
    return Rep(q, f, std::move(dims), std::move(maps));
}

Rep Rep::direct_sum(const Rep& a, const Rep& b) {
    expect_arg(a.quiver() == b.quiver() && a.field() == b.field(), "direct sum over different quivers");
    std::vector<int> dims(a.quiver().vertices());
    for (int v = 0; v < a.quiver().vertices(); ++v) dims[v] = a.dim(v) + b.dim(v);
    std::vector<Matrix> maps;
    for (int ar = 0; ar < a.quiver().arrows(); ++ar)
        maps.push_back(Matrix::diag_sum(a.arrow_map(ar), b.arrow_map(ar)));
    return Rep(a.quiver(), a.field(), std::move(dims), std::move(maps));
}

int Rep::total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), 0); }

bool Rep::operator==(const Rep& o) const {
    return quiver_ == o.quiver_ && field_ == o.field_ && dims_ == o.dims_ &&
           arrow_maps_ == o.arrow_maps_;
}

RepMorphism::RepMorphism(Rep src, Rep dst, std::vector<Matrix> vertex_maps)
    : src_(std::move(src)), dst_(std::move(dst)), maps_(std::move(vertex_maps)) {
    expect_arg(src_.quiver() == dst_.quiver() && src_.field() == dst_.field(),
               "morphism between different quivers");
    expect_arg(static_cast<int>(maps_.size()) == src_.quiver().vertices(), "vertex map count mismatch");
    for (int v = 0; v < src_.quiver().vertices(); ++v)
        expect_arg(maps_[v].rows() == dst_.dim(v) && maps_[v].cols() == src_.dim(v),
                   "vertex map shape mismatch");
    for (int a = 0; a < src_.quiver().arrows(); ++a) {
        int s = src_.quiver().source(a), t = src_.quiver().target(a);
        expect_arg(dst_.arrow_map(a) * maps_[s] == maps_[t] * src_.arrow_map(a),
                   "vertex maps do not commute with arrow maps");
    }
}

RepMorphism RepMorphism::zero(const Rep& src, const Rep& dst) {
    std::vector<Matrix> maps;
    for (int v = 0; v < src.quiver().vertices(); ++v)
        maps.emplace_back(src.field(), dst.dim(v), src.dim(v));
    return RepMorphism(src, dst, std::move(maps));
}

RepMorphism RepMorphism::identity(const Rep& r) {
    std::vector<Matrix> maps;
    for (int v = 0; v < r.quiver().vertices(); ++v)
        maps.push_back(Matrix::identity(r.field(), r.dim(v)));
    return RepMorphism(r, r, std::move(maps));
}

RepMorphism RepMorphism::direct_sum(const RepMorphism& a, const RepMorphism& b) {
    std::vector<Matrix> maps;
    for (int v = 0; v < a.src().quiver().vertices(); ++v)
        maps.push_back(Matrix::diag_sum(a.vertex_map(v), b.vertex_map(v)));
    return RepMorphism(Rep::direct_sum(a.src(), b.src()), Rep::direct_sum(a.dst(), b.dst()),
                       std::move(maps));
}

RepMorphism RepMorphism::compose(const RepMorphism& g) const {
    expect_arg(g.dst() == src_, "composition mismatch");
    std::vector<Matrix> maps;
    for (int v = 0; v < src_.quiver().vertices(); ++v) maps.push_back(maps_[v] * g.vertex_map(v));
    return RepMorphism(g.src(), dst_, std::move(maps));
}

RepMorphism RepMorphism::operator+(const RepMorphism& o) const {
    std::vector<Matrix> maps;
    for (int v = 0; v < src_.quiver().vertices(); ++v) maps.push_back(maps_[v] + o.maps_[v]);
    return RepMorphism(src_, dst_, std::move(maps));
}

RepMorphism RepMorphism::operator-(const RepMorphism& o) const {
    std::vector<Matrix> maps;
    for (int v = 0; v < src_.quiver().vertices(); ++v) maps.push_back(maps_[v] - o.maps_[v]);
    return RepMorphism(src_, dst_, std::move(maps));
}

RepMorphism RepMorphism::scaled(int c) const {
    std::vector<Matrix> maps;
    for (int v = 0; v < src_.quiver().vertices(); ++v) maps.push_back(maps_[v].scaled(c));
    return RepMorphism(src_, dst_, std::move(maps));
}

bool RepMorphism::operator==(const RepMorphism& o) const {
    return src_ == o.src_ && dst_ == o.dst_ && maps_ == o.maps_;
}

bool RepMorphism::is_zero() const {
    return std::all_of(maps_.begin(), maps_.end(), [](const Matrix& m) { return m.is_zero(); });
}

bool RepMorphism::is_idempotent() const {
    return src_ == dst_ && compose(*this) == *this;
}

bool RepMorphism::is_identity() const {
    return src_ == dst_ &&
           std::all_of(maps_.begin(), maps_.end(), [](const Matrix& m) { return m.is_identity(); });
}

bool RepMorphism::is_vertexwise_injective() const {
    for (int v = 0; v < src_.quiver().vertices(); ++v)
        if (rank(maps_[v]) != src_.dim(v)) return false;
    return true;
}

bool RepMorphism::is_vertexwise_surjective() const {
    for (int v = 0; v < src_.quiver().vertices(); ++v)
        if (rank(maps_[v]) != dst_.dim(v)) return false;
    return true;
}

std::optional<RepMorphism> RepMorphism::inverse() const {
    if (src_.dims() != dst_.dims()) return std::nullopt;
    std::vector<Matrix> inv_maps;
    for (int v = 0; v < src_.quiver().vertices(); ++v) {
        auto iv = invert(maps_[v]);
        if (!iv) return std::nullopt;
        inv_maps.push_back(*iv);
    }
    return RepMorphism(dst_, src_, std::move(inv_maps));
}

VertexMapSpace::VertexMapSpace(Rep src, Rep dst) : src_(std::move(src)), dst_(std::move(dst)) {
    expect_arg(src_.quiver() == dst_.quiver() && src_.field() == dst_.field(),
               "vertex map space over different quivers");
    int off = 0;
    for (int v = 0; v < src_.quiver().vertices(); ++v) {
        offsets_.push_back(off);
        off += dst_.dim(v) * src_.dim(v);
    }
    dim_ = off;
}

LinearSystem::Slot VertexMapSpace::slot(int v) const {
    return {offsets_[v], dst_.dim(v), src_.dim(v)};
}

Matrix VertexMapSpace::to_vector(const std::vector<Matrix>& maps) const {
    Matrix out(src_.field(), dim_, 1);
    for (int v = 0; v < src_.quiver().vertices(); ++v) {
        const Matrix& m = maps[v];
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) out.at(offsets_[v] + i * m.cols() + j, 0) = m(i, j);
    }
    return out;
}

std::vector<Matrix> VertexMapSpace::from_vector(const Matrix& column) const {
    expect_arg(column.rows() == dim_ && column.cols() == 1, "vertex map vector shape mismatch");
    std::vector<Matrix> maps;
    for (int v = 0; v < src_.quiver().vertices(); ++v) {
        Matrix m(src_.field(), dst_.dim(v), src_.dim(v));
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) m.at(i, j) = column(offsets_[v] + i * m.cols() + j, 0);
        maps.push_back(std::move(m));
    }
    return maps;
}

RepMorphism VertexMapSpace::morphism_from_vector(const Matrix& column) const {
    return RepMorphism(src_, dst_, from_vector(column));
}

Matrix VertexMapSpace::morphism_to_vector(const RepMorphism& f) const {
    std::vector<Matrix> maps;
    for (int v = 0; v < src_.quiver().vertices(); ++v) maps.push_back(f.vertex_map(v));
    return to_vector(maps);
}

void VertexMapSpace::add_morphism_constraints(LinearSystem& sys, int base_offset) const {
    const Quiver& q = src_.quiver();
    for (int a = 0; a < q.arrows(); ++a) {
        int s = q.source(a), t = q.target(a);
        LinearSystem::Slot fs = slot(s), ft = slot(t);
        fs.offset += base_offset;
        ft.offset += base_offset;
        // dst_a * F_s - F_t * src_a = 0
        sys.add_homogeneous({{fs, dst_.arrow_map(a), std::nullopt, 1},
                             {ft, std::nullopt, src_.arrow_map(a), -1}},
                            dst_.dim(t), src_.dim(s));
    }
}

std::vector<RepMorphism> hom_basis(const Rep& src, const Rep& dst) {
    VertexMapSpace space(src, dst);
    LinearSystem sys(src.field(), space.dim());
    space.add_morphism_constraints(sys);
    Matrix k = sys.kernel();
    std::vector<RepMorphism> basis;
    for (int j = 0; j < k.cols(); ++j) basis.push_back(space.morphism_from_vector(k.col(j)));
    return basis;
}

namespace {

// Deterministic splitmix64 stream; avoids std distributions so results are
// identical across standard libraries.
struct Splitmix {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
};

bool vertexwise_invertible(const RepMorphism& f) {
    for (int v = 0; v < f.src().quiver().vertices(); ++v)
        if (rank(f.vertex_map(v)) != f.src().dim(v)) return false;
    return true;
}

}  // namespace

IsoResult iso_find(const Rep& m, const Rep& n, const SearchBounds& bounds) {
    expect_arg(m.quiver() == n.quiver() && m.field() == n.field(), "iso_find across quivers");
    if (m.dims() != n.dims()) return {IsoResult::Verdict::not_isomorphic, std::nullopt};
    if (m.total_dim() == 0) {
        return {IsoResult::Verdict::found, RepMorphism::zero(m, n)};
    }
    auto basis = hom_basis(m, n);
    int d = static_cast<int>(basis.size());
    int p = m.field().modulus();
    // p^d candidate combinations
    double log_count = d * std::log2(static_cast<double>(p));
    if (log_count <= std::log2(static_cast<double>(bounds.max_enumeration))) {
        std::vector<int> coeff(d, 0);
        std::uint64_t total = 1;
        for (int i = 0; i < d; ++i) total *= static_cast<std::uint64_t>(p);
        for (std::uint64_t idx = 1; idx < total; ++idx) {
            // increment base-p counter
            for (int i = 0; i < d; ++i) {
                if (++coeff[i] < p) break;
                coeff[i] = 0;
            }
            RepMorphism cand = RepMorphism::zero(m, n);
            for (int i = 0; i < d; ++i)
                if (coeff[i] != 0) cand = cand + basis[i].scaled(coeff[i]);
            if (vertexwise_invertible(cand)) return {IsoResult::Verdict::found, cand};
        }
        return {IsoResult::Verdict::not_isomorphic, std::nullopt};
    }
    Splitmix rng{bounds.sample_seed};
    for (int s = 0; s < bounds.samples; ++s) {
        RepMorphism cand = RepMorphism::zero(m, n);
        for (int i = 0; i < d; ++i) {
            int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(p)));
            if (c != 0) cand = cand + basis[i].scaled(c);
        }
        if (vertexwise_invertible(cand)) return {IsoResult::Verdict::found, cand};
    }
    return {IsoResult::Verdict::unknown, std::nullopt};
}

ImageFactorization image_subrep(const RepMorphism& f) {
    const Quiver& q = f.src().quiver();
    const PrimeField& fld = f.src().field();
    std::vector<Matrix> incl_maps;
    std::vector<int> dims;
    for (int v = 0; v < q.vertices(); ++v) {
        Matrix basis = column_space_basis(f.vertex_map(v));
        dims.push_back(basis.cols());
        incl_maps.push_back(basis);
    }
    // Induced arrow maps: solve incl_t * X = dst_a * incl_s (unique).
    std::vector<Matrix> arrow_maps;
    for (int a = 0; a < q.arrows(); ++a) {
        int s = q.source(a), t = q.target(a);
        auto x = solve_canonical(incl_maps[t], f.dst().arrow_map(a) * incl_maps[s]);
        require(x.has_value(), "image is not a subrepresentation");
        arrow_maps.push_back(*x);
    }
    Rep image(q, fld, dims, std::move(arrow_maps));
    RepMorphism inclusion(image, f.dst(), incl_maps);
    std::vector<Matrix> cor_maps;
    for (int v = 0; v < q.vertices(); ++v) {
        auto x = solve_canonical(incl_maps[v], f.vertex_map(v));
        require(x.has_value(), "corestriction solve failed");
        cor_maps.push_back(*x);
    }
    RepMorphism corestriction(f.src(), image, std::move(cor_maps));
    return {std::move(image), std::move(inclusion), std::move(corestriction)};
}

QuotientResult quotient_rep(const Rep& ambient, const RepMorphism& sub_inclusion) {
    expect_arg(sub_inclusion.dst() == ambient, "quotient: inclusion target mismatch");
    expect_arg(sub_inclusion.is_vertexwise_injective(), "quotient: inclusion not injective");
    const Quiver& q = ambient.quiver();
    const PrimeField& fld = ambient.field();
    std::vector<Matrix> proj_maps, comp;
    std::vector<int> dims;
    for (int v = 0; v < q.vertices(); ++v) {
        const Matrix& incl = sub_inclusion.vertex_map(v);
        Matrix w = complement_basis(incl, ambient.dim(v));
        comp.push_back(w);
        dims.push_back(w.cols());
        // projection = bottom rows of [incl | w]^{-1}
        Matrix full = Matrix::hstack(incl, w);
        auto fi = invert(full);
        require(fi.has_value(), "quotient basis inversion failed");
        proj_maps.push_back(fi->block(incl.cols(), 0, w.cols(), ambient.dim(v)));
    }
    std::vector<Matrix> arrow_maps;
    for (int a = 0; a < q.arrows(); ++a) {
        int s = q.source(a), t = q.target(a);
        arrow_maps.push_back(proj_maps[t] * ambient.arrow_map(a) * comp[s]);
    }
    Rep quot(q, fld, dims, std::move(arrow_maps));
    RepMorphism projection(ambient, quot, std::move(proj_maps));
    return {std::move(quot), std::move(projection)};
}

Rep opposite(const Rep& r) {
    std::vector<Matrix> maps;
    for (int a = 0; a < r.quiver().arrows(); ++a) maps.push_back(r.arrow_map(a).transpose());
    return Rep(r.quiver().opposite(), r.field(), r.dims(), std::move(maps));
}

RepMorphism opposite(const RepMorphism& f) {
    std::vector<Matrix> maps;
    for (int v = 0; v < f.src().quiver().vertices(); ++v) maps.push_back(f.vertex_map(v).transpose());
    return RepMorphism(opposite(f.dst()), opposite(f.src()), std::move(maps));
}

}  // namespace karcat
