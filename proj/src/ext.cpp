#include "ext.hpp"

#include <algorithm>

namespace karcat {

ExtCocycle::ExtCocycle(Rep quotient, Rep sub, std::vector<Matrix> blocks)
    : quotient_(std::move(quotient)), sub_(std::move(sub)), blocks_(std::move(blocks)) {
    const Quiver& q = quotient_.quiver();
    expect_arg(q == sub_.quiver() && quotient_.field() == sub_.field(),
               "cocycle ends over different quivers");
    expect_arg(static_cast<int>(blocks_.size()) == q.arrows(), "cocycle block count mismatch");
    for (int a = 0; a < q.arrows(); ++a)
        expect_arg(blocks_[a].rows() == sub_.dim(q.target(a)) &&
                       blocks_[a].cols() == quotient_.dim(q.source(a)),
                   "cocycle block shape mismatch");
}

ExtCocycle ExtCocycle::zero(const Rep& quotient, const Rep& sub) {
    const Quiver& q = quotient.quiver();
    std::vector<Matrix> blocks;
    for (int a = 0; a < q.arrows(); ++a)
        blocks.emplace_back(quotient.field(), sub.dim(q.target(a)), quotient.dim(q.source(a)));
    return ExtCocycle(quotient, sub, std::move(blocks));
}

ExtCocycle ExtCocycle::operator+(const ExtCocycle& o) const {
    expect_arg(quotient_ == o.quotient_ && sub_ == o.sub_, "cocycle sum end mismatch");
    std::vector<Matrix> blocks;
    for (size_t a = 0; a < blocks_.size(); ++a) blocks.push_back(blocks_[a] + o.blocks_[a]);
    return ExtCocycle(quotient_, sub_, std::move(blocks));
}

ExtCocycle ExtCocycle::operator-(const ExtCocycle& o) const {
    expect_arg(quotient_ == o.quotient_ && sub_ == o.sub_, "cocycle difference end mismatch");
    std::vector<Matrix> blocks;
    for (size_t a = 0; a < blocks_.size(); ++a) blocks.push_back(blocks_[a] - o.blocks_[a]);
    return ExtCocycle(quotient_, sub_, std::move(blocks));
}

ExtCocycle ExtCocycle::scaled(int c) const {
    std::vector<Matrix> blocks;
    for (const Matrix& b : blocks_) blocks.push_back(b.scaled(c));
    return ExtCocycle(quotient_, sub_, std::move(blocks));
}

bool ExtCocycle::operator==(const ExtCocycle& o) const {
    return quotient_ == o.quotient_ && sub_ == o.sub_ && blocks_ == o.blocks_;
}

bool ExtCocycle::is_zero_cocycle() const {
    return std::all_of(blocks_.begin(), blocks_.end(), [](const Matrix& m) { return m.is_zero(); });
}

Matrix ExtCocycle::flatten() const {
    Matrix out(quotient_.field(), 0, 1);
    for (const Matrix& b : blocks_) out = Matrix::vstack(out, b.vec());
    return out;
}

ExtCocycle ExtCocycle::unflatten(const Rep& quotient, const Rep& sub, const Matrix& column) {
    const Quiver& q = quotient.quiver();
    std::vector<Matrix> blocks;
    int off = 0;
    for (int a = 0; a < q.arrows(); ++a) {
        int r = sub.dim(q.target(a)), c = quotient.dim(q.source(a));
        Matrix blk(quotient.field(), r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) blk.at(i, j) = column(off + i * c + j, 0);
        off += r * c;
        blocks.push_back(std::move(blk));
    }
    expect_arg(off == column.rows(), "cocycle vector length mismatch");
    return ExtCocycle(quotient, sub, std::move(blocks));
}

ExtCocycle pushforward(const RepMorphism& a, const ExtCocycle& xi) {
    expect_arg(a.src() == xi.sub(), "pushforward: morphism source must be the sub end");
    const Quiver& q = xi.quotient().quiver();
    std::vector<Matrix> blocks;
    for (int ar = 0; ar < q.arrows(); ++ar)
        blocks.push_back(a.vertex_map(q.target(ar)) * xi.block(ar));
    return ExtCocycle(xi.quotient(), a.dst(), std::move(blocks));
}

ExtCocycle pullback(const RepMorphism& c, const ExtCocycle& xi) {
    expect_arg(c.dst() == xi.quotient(), "pullback: morphism target must be the quotient end");
    const Quiver& q = xi.quotient().quiver();
    std::vector<Matrix> blocks;
    for (int ar = 0; ar < q.arrows(); ++ar)
        blocks.push_back(xi.block(ar) * c.vertex_map(q.source(ar)));
    return ExtCocycle(c.src(), xi.sub(), std::move(blocks));
}

ExtCocycle ext_direct_sum(const ExtCocycle& xi, const ExtCocycle& xi2) {
    const Quiver& q = xi.quotient().quiver();
    std::vector<Matrix> blocks;
    for (int a = 0; a < q.arrows(); ++a) blocks.push_back(Matrix::diag_sum(xi.block(a), xi2.block(a)));
    return ExtCocycle(Rep::direct_sum(xi.quotient(), xi2.quotient()),
                      Rep::direct_sum(xi.sub(), xi2.sub()), std::move(blocks));
}

ExtCocycle ext_add(const ExtCocycle& xi, const ExtCocycle& xi2) {
    expect_arg(xi.quotient() == xi2.quotient() && xi.sub() == xi2.sub(), "ext_add end mismatch");
    const Rep& c = xi.quotient();
    const Rep& a = xi.sub();
    const PrimeField& f = c.field();
    // diagonal C -> C + C and codiagonal A + A -> A
    std::vector<Matrix> diag_maps, codiag_maps;
    for (int v = 0; v < c.quiver().vertices(); ++v) {
        Matrix ic = Matrix::identity(f, c.dim(v));
        diag_maps.push_back(Matrix::vstack(ic, ic));
        Matrix ia = Matrix::identity(f, a.dim(v));
        codiag_maps.push_back(Matrix::hstack(ia, ia));
    }
    RepMorphism diag(c, Rep::direct_sum(c, c), std::move(diag_maps));
    RepMorphism codiag(Rep::direct_sum(a, a), a, std::move(codiag_maps));
    ExtCocycle via_formula = pushforward(codiag, pullback(diag, ext_direct_sum(xi, xi2)));
    ExtCocycle direct = xi + xi2;
    require(via_formula == direct, "nabla/delta sum disagrees with blockwise cocycle sum");
    return direct;
}

ExtCocycle opposite(const ExtCocycle& xi) {
    // Quotient and sub swap roles; blocks transpose. Arrow indices are kept.
    std::vector<Matrix> blocks;
    for (int a = 0; a < xi.quotient().quiver().arrows(); ++a)
        blocks.push_back(xi.block(a).transpose());
    return ExtCocycle(opposite(xi.sub()), opposite(xi.quotient()), std::move(blocks));
}

ExtSpace::ExtSpace(Rep quotient, Rep sub)
    : quotient_(std::move(quotient)), sub_(std::move(sub)), cocycle_dim_(0),
      coboundary_(quotient_.field(), 0, 0) {
    const Quiver& q = quotient_.quiver();
    expect_arg(q == sub_.quiver() && quotient_.field() == sub_.field(),
               "ext space ends over different quivers");
    for (int a = 0; a < q.arrows(); ++a)
        cocycle_dim_ += sub_.dim(q.target(a)) * quotient_.dim(q.source(a));
    VertexMapSpace vhoms(quotient_, sub_);
    Matrix phi(quotient_.field(), cocycle_dim_, vhoms.dim());
    for (int j = 0; j < vhoms.dim(); ++j) {
        Matrix unit(quotient_.field(), vhoms.dim(), 1);
        unit.at(j, 0) = 1;
        std::vector<Matrix> f = vhoms.from_vector(unit);
        // Phi(f)_a = f_t * Q_a - S_a * f_s
        Matrix out(quotient_.field(), 0, 1);
        for (int a = 0; a < q.arrows(); ++a) {
            int s = q.source(a), t = q.target(a);
            Matrix blk = f[t] * quotient_.arrow_map(a) - sub_.arrow_map(a) * f[s];
            out = Matrix::vstack(out, blk.vec());
        }
        phi.set_block(0, j, out);
    }
    coboundary_ = phi;
    auto rr = rref(coboundary_.transpose());
    size_t pi = 0;
    for (int cidx = 0; cidx < cocycle_dim_; ++cidx) {
        if (pi < rr.pivots.size() && rr.pivots[pi] == cidx)
            ++pi;
        else
            class_coords_.push_back(cidx);
    }
}

ExtSpace ExtSpace::forced_zero(Rep quotient, Rep sub) {
    ExtSpace s(std::move(quotient), std::move(sub));
    s.coboundary_ = Matrix::identity(s.quotient_.field(), s.cocycle_dim_);
    s.class_coords_.clear();
    return s;
}

ExtCocycle ExtSpace::reduce(const ExtCocycle& xi) const {
    expect_arg(xi.quotient() == quotient_ && xi.sub() == sub_, "reduce: cocycle from another space");
    return ExtCocycle::unflatten(quotient_, sub_, coset_reduce(xi.flatten(), coboundary_));
}

bool ExtSpace::classes_equal(const ExtCocycle& a, const ExtCocycle& b) const {
    return reduce(a) == reduce(b);
}

bool ExtSpace::is_coboundary(const ExtCocycle& xi) const { return reduce(xi).is_zero_cocycle(); }

Matrix ExtSpace::coordinates(const ExtCocycle& xi) const {
    Matrix red = reduce(xi).flatten();
    Matrix out(quotient_.field(), dim(), 1);
    for (int i = 0; i < dim(); ++i) out.at(i, 0) = red(class_coords_[i], 0);
    return out;
}

ExtCocycle ExtSpace::from_coordinates(const Matrix& coords) const {
    expect_arg(coords.rows() == dim() && coords.cols() == 1, "class coordinate shape mismatch");
    Matrix v(quotient_.field(), cocycle_dim_, 1);
    for (int i = 0; i < dim(); ++i) v.at(class_coords_[i], 0) = coords(i, 0);
    return ExtCocycle::unflatten(quotient_, sub_, v);
}

Matrix ExtSpace::class_basis() const {
    Matrix out(quotient_.field(), cocycle_dim_, dim());
    for (int i = 0; i < dim(); ++i) out.at(class_coords_[i], i) = 1;
    return out;
}

ExtCocycle ExtSpace::basis_cocycle(int i) const {
    Matrix coords(quotient_.field(), dim(), 1);
    coords.at(i, 0) = 1;
    return from_coordinates(coords);
}

Matrix ExtSpace::reduction_matrix() const {
    return coset_reduce(Matrix::identity(quotient_.field(), cocycle_dim_), coboundary_);
}

Conflation cocycle_to_ses(const ExtCocycle& xi) {
    const Rep& a = xi.sub();
    const Rep& c = xi.quotient();
    const Quiver& q = a.quiver();
    const PrimeField& f = a.field();
    std::vector<int> dims(q.vertices());
    for (int v = 0; v < q.vertices(); ++v) dims[v] = a.dim(v) + c.dim(v);
    std::vector<Matrix> maps;
    for (int ar = 0; ar < q.arrows(); ++ar) {
        int s = q.source(ar), t = q.target(ar);
        Matrix m(f, dims[t], dims[s]);
        m.set_block(0, 0, a.arrow_map(ar));
        m.set_block(0, a.dim(s), xi.block(ar));
        m.set_block(a.dim(t), a.dim(s), c.arrow_map(ar));
        maps.push_back(std::move(m));
    }
    Rep middle(q, f, dims, std::move(maps));
    std::vector<Matrix> xmaps, ymaps;
    for (int v = 0; v < q.vertices(); ++v) {
        Matrix xv(f, dims[v], a.dim(v));
        xv.set_block(0, 0, Matrix::identity(f, a.dim(v)));
        xmaps.push_back(std::move(xv));
        Matrix yv(f, c.dim(v), dims[v]);
        yv.set_block(0, a.dim(v), Matrix::identity(f, c.dim(v)));
        ymaps.push_back(std::move(yv));
    }
    RepMorphism x(a, middle, std::move(xmaps));
    RepMorphism y(middle, c, std::move(ymaps));
    return Conflation{std::move(x), std::move(y), xi};
}

ExtCocycle ses_to_cocycle(const RepMorphism& x, const RepMorphism& y) {
    expect_arg(x.dst() == y.src(), "ses: middle mismatch");
    const Rep& a = x.src();
    const Rep& b = x.dst();
    const Rep& c = y.dst();
    const Quiver& q = a.quiver();
    const PrimeField& f = a.field();
    require(y.compose(x).is_zero(), "ses: y o x != 0");
    require(x.is_vertexwise_injective(), "ses: x not injective");
    require(y.is_vertexwise_surjective(), "ses: y not surjective");
    for (int v = 0; v < q.vertices(); ++v)
        require(b.dim(v) == a.dim(v) + c.dim(v), "ses: dimensions not additive");
    // Vertexwise splittings: retraction rho with rho*x = 1, section s with
    // y*s = 1 and rho*s = 0, both fixed by complement_basis.
    std::vector<Matrix> rho, sec;
    for (int v = 0; v < q.vertices(); ++v) {
        Matrix w = complement_basis(x.vertex_map(v), b.dim(v));
        Matrix full = Matrix::hstack(x.vertex_map(v), w);
        auto fi = invert(full);
        require(fi.has_value(), "ses: splitting basis not invertible");
        rho.push_back(fi->block(0, 0, a.dim(v), b.dim(v)));
        Matrix yw = y.vertex_map(v) * w;
        auto ywi = invert(yw);
        require(ywi.has_value(), "ses: complement does not map onto the quotient");
        sec.push_back(w * (*ywi));
    }
    std::vector<Matrix> blocks;
    for (int ar = 0; ar < q.arrows(); ++ar) {
        int s = q.source(ar), t = q.target(ar);
        blocks.push_back(rho[t] * (b.arrow_map(ar) * sec[s] - sec[t] * c.arrow_map(ar)));
    }
    return ExtCocycle(c, a, std::move(blocks));
}

void validate_conflation(const Conflation& c) {
    require(c.x.dst() == c.y.src(), "conflation: middle mismatch");
    require(c.cls.sub() == c.sub() && c.cls.quotient() == c.quotient(),
            "conflation: class ends mismatch");
    ExtCocycle derived = ses_to_cocycle(c.x, c.y);
    ExtSpace amb(c.quotient(), c.sub());
    require(amb.classes_equal(derived, c.cls), "conflation: sequence does not realise its class");
}

Conflation conflation_direct_sum(const Conflation& a, const Conflation& b) {
    return Conflation{RepMorphism::direct_sum(a.x, b.x), RepMorphism::direct_sum(a.y, b.y),
                      ext_direct_sum(a.cls, b.cls)};
}

Conflation opposite(const Conflation& c) {
    return Conflation{opposite(c.y), opposite(c.x), opposite(c.cls)};
}

}  // namespace karcat
