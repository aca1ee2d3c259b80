#include "mcdeform/cone.hpp"

#include <algorithm>

#include "mcdeform/error.hpp"

namespace mcdeform {

Vector ConeComplex::assemble(const Vector& l, const Vector& n, const Vector& m) const {
    Vector out = embed_l.apply(l);
    if (embed_n.cols() > 0) axpy(out, Scalar(1), embed_n.apply(n));
    axpy(out, Scalar(1), embed_m.apply(m));
    return out;
}

namespace {

ChainComplex empty_complex() { return ChainComplex(GradedSpace::make(0, -1, {}), Matrix(0, 0)); }

ConeComplex build_cone(ConeComplex::Kind kind, const ChainComplex& l, const ChainComplex& n, const ChainComplex& m,
                       const Matrix& h, const Matrix& g, const std::string& pl, const std::string& pn,
                       const std::string& pm) {
    const auto& L = *l.space();
    const auto& N = *n.space();
    const auto& M = *m.space();
    if (h.rows() != M.total_dim() || h.cols() != L.total_dim() || g.rows() != M.total_dim() ||
        g.cols() != N.total_dim())
        throw Error(ErrorCode::InvalidInput, "cone: map shapes do not match the complexes");

    std::map<int, std::vector<std::string>> labels;
    auto window = [&](const GradedSpace& s, int shift) {
        for (int i = s.dmin(); i <= s.dmax(); ++i) labels[i + shift];
    };
    window(L, 0);
    window(N, 0);
    window(M, 1);
    for (auto& [i, ls] : labels) {
        for (const auto& s : L.labels(i)) ls.push_back(pl + ":" + s);
        for (const auto& s : N.labels(i)) ls.push_back(pn + ":" + s);
        for (const auto& s : M.labels(i - 1)) ls.push_back(pm + ":" + s);
    }
    SpacePtr space;
    if (labels.empty()) {
        space = GradedSpace::make(0, -1, {});
    } else {
        std::vector<std::vector<std::string>> blocks;
        for (const auto& [i, ls] : labels) blocks.push_back(ls);
        space = GradedSpace::make(labels.begin()->first, labels.rbegin()->first, blocks);
    }
    const std::size_t dim = space->total_dim();

    std::vector<std::size_t> pos_l(L.total_dim()), pos_n(N.total_dim()), pos_m(M.total_dim());
    for (std::size_t k = 0; k < L.total_dim(); ++k) {
        const int i = L.degree_of(k);
        pos_l[k] = space->offset(i) + (k - L.offset(i));
    }
    for (std::size_t k = 0; k < N.total_dim(); ++k) {
        const int i = N.degree_of(k);
        pos_n[k] = space->offset(i) + L.dim(i) + (k - N.offset(i));
    }
    for (std::size_t k = 0; k < M.total_dim(); ++k) {
        const int i = M.degree_of(k) + 1;
        pos_m[k] = space->offset(i) + L.dim(i) + N.dim(i) + (k - M.offset(i - 1));
    }

    const Matrix& dl = l.differential().matrix();
    const Matrix& dn = n.differential().matrix();
    const Matrix& dm = m.differential().matrix();
    Matrix d(dim, dim);
    for (std::size_t c = 0; c < L.total_dim(); ++c) {
        for (std::size_t r = 0; r < L.total_dim(); ++r)
            if (dl(r, c) != 0) d(pos_l[r], pos_l[c]) = dl(r, c);
        for (std::size_t r = 0; r < M.total_dim(); ++r)
            if (h(r, c) != 0) d(pos_m[r], pos_l[c]) = h(r, c);
    }
    for (std::size_t c = 0; c < N.total_dim(); ++c) {
        for (std::size_t r = 0; r < N.total_dim(); ++r)
            if (dn(r, c) != 0) d(pos_n[r], pos_n[c]) = dn(r, c);
        for (std::size_t r = 0; r < M.total_dim(); ++r)
            if (g(r, c) != 0) d(pos_m[r], pos_n[c]) = -g(r, c);
    }
    for (std::size_t c = 0; c < M.total_dim(); ++c)
        for (std::size_t r = 0; r < M.total_dim(); ++r)
            if (dm(r, c) != 0) d(pos_m[r], pos_m[c]) = -dm(r, c);

    auto embedding = [&](const std::vector<std::size_t>& pos) {
        Matrix e(dim, pos.size());
        for (std::size_t k = 0; k < pos.size(); ++k) e(pos[k], k) = 1;
        return e;
    };
    return ConeComplex{kind, ChainComplex(space, std::move(d)), embedding(pos_l), embedding(pos_n),
                       embedding(pos_m)};
}

ChainComplex complex_of(const Dgla& l) { return l.complex(); }

void require_shared_target(const DglaMorphism& h, const DglaMorphism& g) {
    if (!(*h.target()->space() == *g.target()->space()) ||
        !(h.target()->differential() == g.target()->differential()))
        throw Error(ErrorCode::TargetMismatch, "h targets '" + h.target()->name() + "' but g targets '" +
                                                   g.target()->name() + "'");
}

}  // namespace

ConeComplex cone_of_chain_map(const ChainComplex& l, const ChainComplex& m, const Matrix& h,
                              const std::string& prefix_l, const std::string& prefix_m) {
    return build_cone(ConeComplex::Kind::Single, l, empty_complex(), m, h, Matrix(m.space()->total_dim(), 0),
                      prefix_l, "N", prefix_m);
}

ConeComplex cone_of_chain_maps(const ChainComplex& l, const ChainComplex& n, const ChainComplex& m, const Matrix& h,
                               const Matrix& g, const std::string& prefix_l, const std::string& prefix_n,
                               const std::string& prefix_m) {
    return build_cone(ConeComplex::Kind::Pair, l, n, m, h, g, prefix_l, prefix_n, prefix_m);
}

ConeComplex cone_single(const DglaMorphism& h) {
    h.graded();
    return cone_of_chain_map(complex_of(*h.source()), complex_of(*h.target()), h.matrix());
}

ConeComplex cone_pair(const DglaMorphism& h, const DglaMorphism& g) {
    require_shared_target(h, g);
    h.graded();
    g.graded();
    return cone_of_chain_maps(complex_of(*h.source()), complex_of(*g.source()), complex_of(*h.target()),
                              h.matrix(), g.matrix());
}

DglaMorphism difference_on_product(const DglaMorphism& h, const DglaMorphism& g) {
    require_shared_target(h, g);
    auto product = product_dgla(*h.source(), *g.source());
    const auto& P = *product->space();
    const auto& Ls = *h.source()->space();
    const auto& Ns = *g.source()->space();
    Matrix diff(h.target()->dim(), P.total_dim());
    for (std::size_t c = 0; c < P.total_dim(); ++c) {
        const int deg = P.degree_of(c);
        const std::size_t local = c - P.offset(deg);
        if (local < Ls.dim(deg))
            diff.set_col(c, h.matrix().col(Ls.offset(deg) + local));
        else
            diff.set_col(c, negate(g.matrix().col(Ns.offset(deg) + (local - Ls.dim(deg)))));
    }
    return DglaMorphism(product, h.target(), std::move(diff));
}

GammaMap gamma_quotient_map(const DglaMorphism& h, const DglaMorphism& g) {
    require_shared_target(h, g);
    const GradedMap hm = h.graded();
    g.graded();
    const auto& L = *h.source()->space();
    const auto& M = *h.target()->space();
    for (int i = L.dmin(); i <= L.dmax(); ++i)
        if (rank(hm.block(i)) != L.dim(i))
            throw Error(ErrorCode::NotInjective, "h : " + h.source()->name() + " -> " + h.target()->name() +
                                                     " has a nonzero kernel in degree " + std::to_string(i));

    // coker(h) per degree: complement of im h by standard vectors; π is read
    // off the inverse of [im h | complement].
    std::map<int, std::vector<std::string>> labels;
    std::vector<Vector> iota_cols;
    std::vector<Vector> pi_rows;
    for (int i = M.dmin(); i <= M.dmax(); ++i) {
        const Matrix q = hm.block(i);
        const std::size_t n = M.dim(i);
        const auto comp = complement_indices(q);
        auto& ls = labels[i];
        std::vector<Vector> cols = q.columns();
        for (auto j : comp) {
            cols.push_back(unit(n, j));
            ls.push_back("[" + M.label(M.offset(i) + j) + "]");
            iota_cols.push_back(M.embed(unit(n, j), i));
        }
        const Matrix inv = inverse(Matrix::from_columns(n, cols));
        for (std::size_t k = 0; k < comp.size(); ++k) pi_rows.push_back(M.embed(inv.row(q.cols() + k), i));
    }
    auto qspace = GradedSpace::from_map(labels);
    const std::size_t qd = qspace->total_dim();
    Matrix iota = Matrix::from_columns(M.total_dim(), iota_cols);
    Matrix pi(qd, M.total_dim());
    for (std::size_t r = 0; r < qd; ++r)
        for (std::size_t c = 0; c < M.total_dim(); ++c) pi(r, c) = pi_rows[r][c];
    ChainComplex coker(qspace, pi * h.target()->differential() * iota);

    ConeComplex source = cone_pair(h, g);
    ConeComplex target = cone_of_chain_map(complex_of(*g.source()), coker, pi * g.matrix(), "N", "Q");

    // γ(l, n, m) = (-n, π(m))
    const Matrix map = (target.embed_l * source.embed_n.transpose()).scaled(-1) +
                       target.embed_m * pi * source.embed_m.transpose();
    GradedMap gm(source.complex.space(), target.complex.space(), 0, map);
    return GammaMap{std::move(source), std::move(coker), std::move(pi), std::move(target), std::move(gm)};
}

SwapMap swap_iso(const DglaMorphism& h, const DglaMorphism& g) {
    require_shared_target(h, g);
    ConeComplex source = cone_pair(h, g);
    g.graded();
    h.graded();
    ConeComplex target = cone_of_chain_maps(complex_of(*g.source()), complex_of(*h.source()),
                                            complex_of(*h.target()), g.matrix(), h.matrix(), "N", "L", "M");
    // target.embed_l is the N piece, target.embed_n the L piece
    const Matrix map = (target.embed_l * source.embed_n.transpose()).scaled(-1) +
                       (target.embed_n * source.embed_l.transpose()).scaled(-1) +
                       target.embed_m * source.embed_m.transpose();
    GradedMap gm(source.complex.space(), target.complex.space(), 0, map);
    return SwapMap{std::move(source), std::move(target), std::move(gm)};
}

bool LongExactSequenceReport::exact() const {
    for (const auto& n : nodes)
        if (!n.exact()) return false;
    return true;
}

namespace {

// Matrix of the map induced on cohomology by a linear map of degree `shift`
// from degree i of the source.
Matrix induced(const Matrix& f, int shift, const CohomologyResult& src, const CohomologyResult& tgt, int i) {
    const std::size_t sd = src.dim(i), td = tgt.dim(i + shift);
    Matrix out(td, sd);
    if (td == 0) return out;
    for (std::size_t k = 0; k < sd; ++k) out.set_col(k, tgt.classify(i + shift, f.apply(src.at(i).representatives[k])));
    return out;
}

}  // namespace

LongExactSequenceReport long_exact_sequence_check(const DglaMorphism& h, const DglaMorphism& g) {
    const ConeComplex cone = cone_pair(h, g);
    const DglaMorphism diff = difference_on_product(h, g);
    const CohomologyResult hc = compute_cohomology(cone.complex);
    const CohomologyResult hp = compute_cohomology(diff.source()->complex());
    const CohomologyResult hm = compute_cohomology(h.target()->complex());

    // cone -> L x N forgets m; the product basis order per degree matches the
    // cone's L, N blocks
    const auto& C = *cone.complex.space();
    const auto& P = *diff.source()->space();
    Matrix proj(P.total_dim(), C.total_dim());
    for (int i = P.dmin(); i <= P.dmax(); ++i)
        for (std::size_t k = 0; k < P.dim(i); ++k) proj(P.offset(i) + k, C.offset(i) + k) = 1;
    const Matrix& phi = diff.matrix();
    const Matrix& conn = cone.embed_m;

    int lo = 0, hi = -1;
    bool any = false;
    for (const GradedSpace* s : {&C, &P, h.target()->space().get()}) {
        if (s->total_dim() == 0) continue;
        lo = any ? std::min(lo, s->dmin()) : s->dmin();
        hi = any ? std::max(hi, s->dmax()) : s->dmax();
        any = true;
    }
    LongExactSequenceReport out;
    for (int i = lo - 1; i <= hi + 1; ++i) {
        const Matrix c_in = induced(conn, 1, hm, hc, i - 1);
        const Matrix p = induced(proj, 0, hc, hp, i);
        const Matrix f = induced(phi, 0, hp, hm, i);
        const Matrix c_out = induced(conn, 1, hm, hc, i);
        out.nodes.push_back({i, "H(C)", hc.dim(i), rank(c_in), rank(p), (p * c_in).is_zero()});
        out.nodes.push_back({i, "H(LxN)", hp.dim(i), rank(p), rank(f), (f * p).is_zero()});
        out.nodes.push_back({i, "H(M)", hm.dim(i), rank(f), rank(c_out), (c_out * f).is_zero()});
    }
    return out;
}

}  // namespace mcdeform
