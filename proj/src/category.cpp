#include "category.hpp"

#include <cmath>

namespace karcat {

Category::Category(Backend b, Quiver q, PrimeField f)
    : backend_(b), quiver_(std::move(q)), field_(f) {}

Category Category::ambient(Quiver q, PrimeField f) {
    return Category(Backend::ambient, std::move(q), f);
}

Category Category::balanced(Quiver q, PrimeField f, std::vector<int> weights) {
    Category c(Backend::balanced, std::move(q), f);
    expect_arg(static_cast<int>(weights.size()) == c.quiver_.vertices(),
               "weight count must match vertex count");
    c.weights_ = std::move(weights);
    return c;
}

Category Category::formal(Quiver q, PrimeField f, std::vector<Rep> generators) {
    Category c(Backend::formal, std::move(q), f);
    expect_arg(!generators.empty(), "formal backend needs at least one generator");
    for (const Rep& g : generators)
        expect_arg(g.quiver() == c.quiver_ && g.field() == f, "generator over wrong quiver/field");
    c.generators_ = std::move(generators);
    return c;
}

bool Category::weights_balance(const std::vector<int>& dims) const {
    long long acc = 0;
    for (size_t v = 0; v < dims.size(); ++v) acc += static_cast<long long>(weights_[v]) * dims[v];
    return acc == 0;
}

Membership Category::contains(const Rep& r) const {
    expect_arg(r.quiver() == quiver_ && r.field() == field_, "membership across categories");
    switch (backend_) {
        case Backend::ambient:
            return Membership::yes;
        case Backend::balanced:
            return weights_balance(r.dims()) ? Membership::yes : Membership::no;
        case Backend::formal:
            break;
    }
    // Search multiplicity vectors with matching dimension vector, m_i <= 4.
    int ngen = static_cast<int>(generators_.size());
    std::vector<int> mult(ngen, 0);
    bool saw_unknown = false;
    const int cap = 4;
    while (true) {
        std::vector<int> dims(quiver_.vertices(), 0);
        for (int i = 0; i < ngen; ++i)
            for (int v = 0; v < quiver_.vertices(); ++v) dims[v] += mult[i] * generators_[i].dim(v);
        if (dims == r.dims()) {
            Rep cand = Rep::zero(quiver_, field_);
            for (int i = 0; i < ngen; ++i)
                for (int k = 0; k < mult[i]; ++k) cand = Rep::direct_sum(cand, generators_[i]);
            if (cand == r) return Membership::yes;
            IsoResult res = iso_find(r, cand, bounds_);
            if (res.verdict == IsoResult::Verdict::found) return Membership::yes;
            if (res.verdict == IsoResult::Verdict::unknown) saw_unknown = true;
        }
        int i = 0;
        while (i < ngen && ++mult[i] > cap) mult[i++] = 0;
        if (i == ngen) break;
    }
    return saw_unknown ? Membership::unknown : Membership::no;
}

ExtSpace Category::ext(const Rep& quotient, const Rep& sub) const {
    if (backend_ == Backend::formal) return ExtSpace::forced_zero(quotient, sub);
    return ExtSpace(quotient, sub);
}

Category Category::opposite() const {
    switch (backend_) {
        case Backend::ambient:
            return ambient(quiver_.opposite(), field_);
        case Backend::balanced:
            return balanced(quiver_.opposite(), field_, weights_);
        case Backend::formal: {
            std::vector<Rep> gens;
            for (const Rep& g : generators_) gens.push_back(karcat::opposite(g));
            Category c = formal(quiver_.opposite(), field_, std::move(gens));
            c.bounds_ = bounds_;
            return c;
        }
    }
    throw std::logic_error("unreachable");
}

bool Category::operator==(const Category& o) const {
    return backend_ == o.backend_ && quiver_ == o.quiver_ && field_ == o.field_ &&
           weights_ == o.weights_ && generators_ == o.generators_;
}

CObject::CObject(CategoryPtr c, Rep r) : cat(std::move(c)), rep(std::move(r)) {
    expect_arg(cat != nullptr, "object without category");
    expect_arg(cat->contains(rep) == Membership::yes, "representation is not a member");
}

ExtSpace e_group(const CObject& quotient, const CObject& sub) {
    expect_arg(*quotient.cat == *sub.cat, "ext group across categories");
    return quotient.cat->ext(quotient.rep, sub.rep);
}

Conflation s_realize(const CategoryPtr& cat, const ExtCocycle& delta) {
    require(cat->contains(delta.sub()) == Membership::yes &&
                cat->contains(delta.quotient()) == Membership::yes,
            "realisation ends must be members");
    Conflation conf = cocycle_to_ses(delta);
    require(cat->contains(conf.middle()) == Membership::yes,
            "middle term escaped the category (extension closure violated)");
    return conf;
}

namespace {

void add_left_compose_rows(LinearSystem& sys, const VertexMapSpace& space,
                           const RepMorphism& right, const RepMorphism& rhs) {
    // unknown o right = rhs, vertexwise
    for (int v = 0; v < space.src().quiver().vertices(); ++v)
        sys.add_equation({{space.slot(v), std::nullopt, right.vertex_map(v), 1}},
                         rhs.vertex_map(v));
}

void add_right_compose_rows(LinearSystem& sys, const VertexMapSpace& space,
                            const RepMorphism& left, const RepMorphism& rhs) {
    // left o unknown = rhs, vertexwise
    for (int v = 0; v < space.src().quiver().vertices(); ++v)
        sys.add_equation({{space.slot(v), left.vertex_map(v), std::nullopt, 1}},
                         rhs.vertex_map(v));
}

struct AffineSearch {
    bool exhausted = false;
    std::optional<RepMorphism> found;
};

// Walks particular + kernel combinations (all-zero coefficients first),
// falling back to seeded sampling past the enumeration bound.
template <typename Pred>
AffineSearch search_affine(const VertexMapSpace& space, const Matrix& particular,
                           const Matrix& kernel, const SearchBounds& bounds, Pred&& good) {
    const PrimeField& f = particular.field();
    int p = f.modulus();
    int d = kernel.cols();
    double log_count = d * std::log2(static_cast<double>(p));
    auto candidate = [&](const std::vector<int>& coeff) {
        Matrix v = particular;
        for (int i = 0; i < d; ++i) {
            if (coeff[i] == 0) continue;
            Matrix add = kernel.col(i).scaled(coeff[i]);
            v = v + add;
        }
        return space.morphism_from_vector(v);
    };
    if (log_count <= std::log2(static_cast<double>(bounds.max_enumeration))) {
        std::vector<int> coeff(d, 0);
        std::uint64_t total = 1;
        for (int i = 0; i < d; ++i) total *= static_cast<std::uint64_t>(p);
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            if (idx > 0)
                for (int i = 0; i < d; ++i) {
                    if (++coeff[i] < p) break;
                    coeff[i] = 0;
                }
            RepMorphism cand = candidate(coeff);
            if (good(cand)) return {true, cand};
        }
        return {true, std::nullopt};
    }
    std::uint64_t state = bounds.sample_seed;
    auto next = [&state]() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    };
    for (int s = 0; s < bounds.samples; ++s) {
        std::vector<int> coeff(d);
        for (int i = 0; i < d; ++i) coeff[i] = static_cast<int>(next() % p);
        RepMorphism cand = candidate(coeff);
        if (good(cand)) return {false, cand};
    }
    return {false, std::nullopt};
}

bool vertexwise_invertible(const RepMorphism& f) {
    for (int v = 0; v < f.src().quiver().vertices(); ++v)
        if (rank(f.vertex_map(v)) != f.src().dim(v)) return false;
    return true;
}

}  // namespace

RepMorphism lift_fill(const RepMorphism& a, const RepMorphism& c, const Conflation& s1,
                      const Conflation& s2) {
    expect_arg(a.src() == s1.sub() && a.dst() == s2.sub(), "lift_fill: bad sub-end morphism");
    expect_arg(c.src() == s1.quotient() && c.dst() == s2.quotient(),
               "lift_fill: bad quotient-end morphism");
    ExtSpace amb(s1.quotient(), s2.sub());
    if (!amb.is_coboundary(pushforward(a, s1.cls) - pullback(c, s2.cls)))
        throw std::logic_error("lift_fill: (a, c) is not a morphism of extensions");
    VertexMapSpace space(s1.middle(), s2.middle());
    LinearSystem sys(a.src().field(), space.dim());
    space.add_morphism_constraints(sys);
    add_left_compose_rows(sys, space, s1.x, s2.x.compose(a));
    add_right_compose_rows(sys, space, s2.y, c.compose(s1.y));
    auto sol = sys.solve();
    require(sol.has_value(), "lift_fill: system unexpectedly inconsistent");
    return space.morphism_from_vector(*sol);
}

RepMorphism et3_complete(const RepMorphism& a, const RepMorphism& b, const Conflation& s1,
                         const Conflation& s2) {
    expect_arg(b.compose(s1.x) == s2.x.compose(a), "et3_complete: left square does not commute");
    VertexMapSpace space(s1.quotient(), s2.quotient());
    LinearSystem sys(a.src().field(), space.dim());
    space.add_morphism_constraints(sys);
    add_left_compose_rows(sys, space, s1.y, s2.y.compose(b));
    auto sol = sys.solve();
    require(sol.has_value(), "et3_complete: no factorisation through the deflation");
    RepMorphism c = space.morphism_from_vector(*sol);
    ExtSpace amb(s1.quotient(), s2.sub());
    require(amb.is_coboundary(pushforward(a, s1.cls) - pullback(c, s2.cls)),
            "et3_complete: completed square is not a morphism of extensions");
    return c;
}

EquivalenceResult seq_equivalent(const Conflation& s1, const Conflation& s2,
                                 const SearchBounds& bounds) {
    expect_arg(s1.sub() == s2.sub() && s1.quotient() == s2.quotient(),
               "seq_equivalent: ends differ");
    VertexMapSpace space(s1.middle(), s2.middle());
    LinearSystem sys(s1.sub().field(), space.dim());
    space.add_morphism_constraints(sys);
    add_left_compose_rows(sys, space, s1.x, s2.x);
    add_right_compose_rows(sys, space, s2.y, s1.y);
    auto particular = sys.solve();
    if (!particular.has_value())
        return {EquivalenceResult::Verdict::not_equivalent, std::nullopt};
    // Equal classes guarantee an invertible fill; try the direct witness first.
    ExtSpace amb(s1.quotient(), s1.sub());
    if (amb.classes_equal(s1.cls, s2.cls)) {
        RepMorphism direct = lift_fill(RepMorphism::identity(s1.sub()),
                                       RepMorphism::identity(s1.quotient()), s1, s2);
        if (vertexwise_invertible(direct))
            return {EquivalenceResult::Verdict::equivalent, direct};
    }
    Matrix kernel = sys.kernel();
    AffineSearch res = search_affine(space, *particular, kernel, bounds, vertexwise_invertible);
    if (res.found) return {EquivalenceResult::Verdict::equivalent, res.found};
    return {res.exhausted ? EquivalenceResult::Verdict::not_equivalent
                          : EquivalenceResult::Verdict::unknown,
            std::nullopt};
}

Et4Result et4_base(const Conflation& s1, const Conflation& s2) {
    expect_arg(s1.middle() == s2.sub(), "et4_base: sequences do not compose");
    const RepMorphism& f = s1.x;
    const RepMorphism& fp = s1.y;
    const RepMorphism& g = s2.x;
    const RepMorphism& gp = s2.y;
    RepMorphism h = g.compose(f);  // A -> C
    ImageFactorization img = image_subrep(h);
    QuotientResult quo = quotient_rep(s2.middle(), img.inclusion);
    const RepMorphism& hp = quo.projection;  // C -> E
    ExtCocycle delta2 = ses_to_cocycle(h, hp);
    Conflation composite{h, hp, delta2};

    // d : D -> E with d o f' = h' o g
    VertexMapSpace dspace(s1.quotient(), quo.quotient);
    LinearSystem dsys(f.src().field(), dspace.dim());
    dspace.add_morphism_constraints(dsys);
    add_left_compose_rows(dsys, dspace, fp, hp.compose(g));
    auto dsol = dsys.solve();
    require(dsol.has_value(), "et4_base: no induced map on the first quotient");
    RepMorphism d = dspace.morphism_from_vector(*dsol);

    // e : E -> F with e o h' = g'
    VertexMapSpace espace(quo.quotient, s2.quotient());
    LinearSystem esys(f.src().field(), espace.dim());
    espace.add_morphism_constraints(esys);
    add_left_compose_rows(esys, espace, hp, gp);
    auto esol = esys.solve();
    require(esol.has_value(), "et4_base: no induced map onto the second quotient");
    RepMorphism e = espace.morphism_from_vector(*esol);

    Conflation de{d, e, ses_to_cocycle(d, e)};
    // (i) D -> E -> F realises (f')_* delta'
    validate_conflation(de);
    ExtSpace amb_fd(s2.quotient(), s1.quotient());
    require(amb_fd.classes_equal(de.cls, pushforward(fp, s2.cls)),
            "et4_base: (i) fails, D -> E -> F does not realise (f')_* delta'");
    // (ii) d^* delta'' = delta
    ExtSpace amb_da(s1.quotient(), s1.sub());
    require(amb_da.classes_equal(pullback(d, delta2), s1.cls), "et4_base: (ii) fails");
    // (iii) f_* delta'' = e^* delta'
    ExtSpace amb_eb(quo.quotient, s1.middle());
    require(amb_eb.classes_equal(pushforward(f, delta2), pullback(e, s2.cls)),
            "et4_base: (iii) fails");
    return {std::move(composite), std::move(d), std::move(e), std::move(de)};
}

MappingConeResult mapping_cone_base(const Conflation& conf, const RepMorphism& f) {
    expect_arg(f.src() == conf.sub(), "mapping_cone: morphism must leave the sub end");
    ExtSpace amb(conf.quotient(), f.dst());
    Conflation pushed = cocycle_to_ses(amb.reduce(pushforward(f, conf.cls)));
    RepMorphism g = lift_fill(f, RepMorphism::identity(conf.quotient()), conf, pushed);
    const Quiver& q = conf.sub().quiver();
    std::vector<Matrix> infl, defl;
    for (int v = 0; v < q.vertices(); ++v) {
        infl.push_back(Matrix::vstack(f.vertex_map(v).negated(), conf.x.vertex_map(v)));
        defl.push_back(Matrix::hstack(pushed.x.vertex_map(v), g.vertex_map(v)));
    }
    Rep db = Rep::direct_sum(f.dst(), conf.middle());
    RepMorphism cone_x(conf.sub(), db, std::move(infl));
    RepMorphism cone_y(db, pushed.middle(), std::move(defl));
    Conflation cone{cone_x, cone_y, pullback(pushed.y, conf.cls)};
    validate_conflation(cone);
    return {std::move(g), std::move(cone), std::move(pushed)};
}

ConeFillResult cone_fill_base(const Conflation& eps_row, const Conflation& delta_row,
                              const RepMorphism& u) {
    expect_arg(eps_row.sub() == delta_row.sub(), "cone_fill: rows must share the sub end");
    expect_arg(u.compose(eps_row.x) == delta_row.x, "cone_fill: left square does not commute");
    const PrimeField& fld = u.src().field();
    VertexMapSpace wspace(eps_row.quotient(), delta_row.quotient());
    LinearSystem sys(fld, wspace.dim());
    wspace.add_morphism_constraints(sys);
    add_left_compose_rows(sys, wspace, eps_row.y, delta_row.y.compose(u));
    // class condition: w^* delta = eps, linear in w after coset reduction
    ExtSpace amb(eps_row.quotient(), eps_row.sub());
    Matrix reduction = amb.reduction_matrix();
    Matrix pb(fld, amb.cocycle_dim(), wspace.dim());
    for (int j = 0; j < wspace.dim(); ++j) {
        Matrix unit(fld, wspace.dim(), 1);
        unit.at(j, 0) = 1;
        // not necessarily a morphism; pull back blockwise by raw vertex maps
        std::vector<Matrix> maps = wspace.from_vector(unit);
        Matrix out(fld, 0, 1);
        const Quiver& q = u.src().quiver();
        for (int a = 0; a < q.arrows(); ++a)
            out = Matrix::vstack(out, (delta_row.cls.block(a) * maps[q.source(a)]).vec());
        pb.set_block(0, j, out);
    }
    sys.add_raw(reduction * pb, reduction * eps_row.cls.flatten(), 0);
    auto sol = sys.solve();
    require(sol.has_value(), "cone_fill: no morphism satisfies both conditions");
    RepMorphism w = wspace.morphism_from_vector(*sol);
    require(amb.classes_equal(pullback(w, delta_row.cls), eps_row.cls),
            "cone_fill: class condition lost");
    const Quiver& q = u.src().quiver();
    std::vector<Matrix> infl, defl;
    for (int v = 0; v < q.vertices(); ++v) {
        infl.push_back(Matrix::vstack(eps_row.y.vertex_map(v).negated(), u.vertex_map(v)));
        defl.push_back(Matrix::hstack(w.vertex_map(v), delta_row.y.vertex_map(v)));
    }
    Rep cy = Rep::direct_sum(eps_row.quotient(), delta_row.middle());
    RepMorphism cone_x(eps_row.middle(), cy, std::move(infl));
    RepMorphism cone_y(cy, delta_row.quotient(), std::move(defl));
    Conflation cone{cone_x, cone_y, pushforward(eps_row.x, delta_row.cls)};
    validate_conflation(cone);
    return {std::move(w), std::move(cone)};
}

Conflation summand_cancel(const Conflation& conf, const Rep& x_part, const Rep& a_part,
                          const Rep& y_part) {
    expect_arg(conf.sub() == Rep::direct_sum(x_part, a_part),
               "summand_cancel: sub is not the stated direct sum");
    expect_arg(conf.middle() == Rep::direct_sum(y_part, a_part),
               "summand_cancel: middle is not the stated direct sum");
    const Quiver& q = x_part.quiver();
    const PrimeField& fld = x_part.field();
    std::vector<Matrix> tmaps, ymaps;
    for (int v = 0; v < q.vertices(); ++v) {
        int dx = x_part.dim(v), da = a_part.dim(v), dy = y_part.dim(v);
        const Matrix& im = conf.x.vertex_map(v);
        Matrix xb = im.block(0, 0, dy, dx);
        Matrix ub = im.block(0, dx, dy, da);
        Matrix vb = im.block(dy, 0, da, dx);
        Matrix ob = im.block(dy, dx, da, da);
        require(ob.is_identity(), "summand_cancel: bottom-right block is not the identity");
        tmaps.push_back(xb - ub * vb);
        ymaps.push_back(conf.y.vertex_map(v).block(0, 0, conf.quotient().dim(v), dy));
    }
    RepMorphism t(x_part, y_part, std::move(tmaps));
    RepMorphism yred(y_part, conf.quotient(), std::move(ymaps));
    // p = [1, 0] : X (+) A -> X
    std::vector<Matrix> pmaps;
    for (int v = 0; v < q.vertices(); ++v)
        pmaps.push_back(Matrix::hstack(Matrix::identity(fld, x_part.dim(v)),
                                       Matrix(fld, x_part.dim(v), a_part.dim(v))));
    RepMorphism p(conf.sub(), x_part, std::move(pmaps));
    Conflation out{t, yred, pushforward(p, conf.cls)};
    validate_conflation(out);
    return out;
}

Conflation transport_conflation(const Conflation& conf, const RepMorphism& f,
                                const RepMorphism& g, const RepMorphism& h) {
    auto fi = f.inverse();
    auto gi = g.inverse();
    auto hi = h.inverse();
    expect_arg(fi && gi && hi, "transport requires isomorphisms");
    RepMorphism nx = g.compose(conf.x).compose(*fi);
    RepMorphism ny = h.compose(conf.y).compose(*gi);
    Conflation out{nx, ny, pushforward(f, pullback(*hi, conf.cls))};
    validate_conflation(out);
    return out;
}

namespace {

struct HomCoords {
    VertexMapSpace space;
    Matrix basis;  // columns = basis morphisms, flattened

    HomCoords(const Rep& src, const Rep& dst) : space(src, dst), basis(src.field(), 0, 0) {
        LinearSystem sys(src.field(), space.dim());
        space.add_morphism_constraints(sys);
        basis = sys.kernel();
    }
    int dim() const { return basis.cols(); }
    Matrix coords(const RepMorphism& f) const {
        auto c = solve_canonical(basis, space.morphism_to_vector(f));
        require(c.has_value(), "morphism outside its hom space");
        return *c;
    }
    RepMorphism from_coords(const Matrix& c) const {
        return space.morphism_from_vector(basis * c);
    }
};

void check_exact_at(const Matrix& into, const Matrix& outof, int node_dim, const char* where) {
    require((outof * into).is_zero(), std::string("composite not zero at ") + where);
    require(rank(into) + rank(outof) == node_dim, std::string("im != ker at ") + where);
}

}  // namespace

void check_long_exact(const CategoryPtr& cat, const Conflation& conf, const Rep& test) {
    const PrimeField& fld = test.field();
    const Rep& A = conf.sub();
    const Rep& B = conf.middle();
    const Rep& C = conf.quotient();
    // contravariant sequence: (C,X) -> (B,X) -> (A,X) -> E(C,X) -> E(B,X) -> E(A,X)
    {
        HomCoords hc(C, test), hb(B, test), ha(A, test);
        ExtSpace ec = cat->ext(C, test), eb = cat->ext(B, test), ea = cat->ext(A, test);
        auto map_hom = [&](const HomCoords& from, const HomCoords& to, const RepMorphism& pre) {
            Matrix m(fld, to.dim(), from.dim());
            for (int j = 0; j < from.dim(); ++j) {
                Matrix unit(fld, from.dim(), 1);
                unit.at(j, 0) = 1;
                m.set_block(0, j, to.coords(from.from_coords(unit).compose(pre)));
            }
            return m;
        };
        Matrix m1 = map_hom(hc, hb, conf.y);
        Matrix m2 = map_hom(hb, ha, conf.x);
        Matrix m3(fld, ec.dim(), ha.dim());
        for (int j = 0; j < ha.dim(); ++j) {
            Matrix unit(fld, ha.dim(), 1);
            unit.at(j, 0) = 1;
            m3.set_block(0, j, ec.coordinates(pushforward(ha.from_coords(unit), conf.cls)));
        }
        auto map_ext_pull = [&](const ExtSpace& from, const ExtSpace& to, const RepMorphism& m) {
            Matrix out(fld, to.dim(), from.dim());
            for (int j = 0; j < from.dim(); ++j)
                out.set_block(0, j, to.coordinates(pullback(m, from.basis_cocycle(j))));
            return out;
        };
        Matrix m4 = map_ext_pull(ec, eb, conf.y);
        Matrix m5 = map_ext_pull(eb, ea, conf.x);
        check_exact_at(m1, m2, hb.dim(), "Hom(B, X)");
        check_exact_at(m2, m3, ha.dim(), "Hom(A, X)");
        check_exact_at(m3, m4, ec.dim(), "Ext(C, X)");
        check_exact_at(m4, m5, eb.dim(), "Ext(B, X)");
    }
    // covariant sequence: (X,A) -> (X,B) -> (X,C) -> E(X,A) -> E(X,B) -> E(X,C)
    {
        HomCoords ha(test, A), hb(test, B), hc(test, C);
        ExtSpace ea = cat->ext(test, A), eb = cat->ext(test, B), ec = cat->ext(test, C);
        auto map_hom = [&](const HomCoords& from, const HomCoords& to, const RepMorphism& post) {
            Matrix m(fld, to.dim(), from.dim());
            for (int j = 0; j < from.dim(); ++j) {
                Matrix unit(fld, from.dim(), 1);
                unit.at(j, 0) = 1;
                m.set_block(0, j, to.coords(post.compose(from.from_coords(unit))));
            }
            return m;
        };
        Matrix m1 = map_hom(ha, hb, conf.x);
        Matrix m2 = map_hom(hb, hc, conf.y);
        Matrix m3(fld, ea.dim(), hc.dim());
        for (int j = 0; j < hc.dim(); ++j) {
            Matrix unit(fld, hc.dim(), 1);
            unit.at(j, 0) = 1;
            m3.set_block(0, j, ea.coordinates(pullback(hc.from_coords(unit), conf.cls)));
        }
        auto map_ext_push = [&](const ExtSpace& from, const ExtSpace& to, const RepMorphism& m) {
            Matrix out(fld, to.dim(), from.dim());
            for (int j = 0; j < from.dim(); ++j)
                out.set_block(0, j, to.coordinates(pushforward(m, from.basis_cocycle(j))));
            return out;
        };
        Matrix m4 = map_ext_push(ea, eb, conf.x);
        Matrix m5 = map_ext_push(eb, ec, conf.y);
        check_exact_at(m1, m2, hb.dim(), "Hom(X, B)");
        check_exact_at(m2, m3, hc.dim(), "Hom(X, C)");
        check_exact_at(m3, m4, ea.dim(), "Ext(X, A)");
        check_exact_at(m4, m5, eb.dim(), "Ext(X, B)");
    }
}

void check_weak_kernel_cokernel(const CategoryPtr& cat, const Conflation& conf) {
    require(conf.y.compose(conf.x).is_zero(), "y o x != 0");
    require(cat->ext(conf.quotient(), conf.middle())
                .is_coboundary(pushforward(conf.x, conf.cls)),
            "x_* delta != 0");
    require(cat->ext(conf.middle(), conf.sub()).is_coboundary(pullback(conf.y, conf.cls)),
            "y^* delta != 0");
}

CObject opposite(const CObject& o) {
    auto opcat = std::make_shared<const Category>(o.cat->opposite());
    return CObject(opcat, opposite(o.rep));
}

}  // namespace karcat
