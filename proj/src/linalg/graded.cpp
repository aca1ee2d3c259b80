#include "mcdeform/graded.hpp"

#include <sstream>

#include "mcdeform/error.hpp"

namespace mcdeform {

// ---------------------------------------------------------------- GradedSpace

GradedSpace::GradedSpace(int dmin, int dmax, std::vector<std::vector<std::string>> labels)
    : dmin_(dmin), dmax_(dmax), labels_(std::move(labels)) {
    const std::size_t width = dmax_ >= dmin_ ? static_cast<std::size_t>(dmax_ - dmin_ + 1) : 0;
    if (labels_.size() != width)
        throw Error(ErrorCode::InvalidInput, "graded space: expected " + std::to_string(width) +
                                                 " degree blocks for window [" + std::to_string(dmin_) + ", " +
                                                 std::to_string(dmax_) + "]");
    std::size_t off = 0;
    for (std::size_t k = 0; k < labels_.size(); ++k) {
        offsets_.push_back(off);
        for (const auto& l : labels_[k]) {
            if (!index_.emplace(l, off).second)
                throw Error(ErrorCode::InvalidInput, "duplicate basis label '" + l + "' (degree " +
                                                         std::to_string(dmin_ + static_cast<int>(k)) + ")");
            degree_of_.push_back(dmin_ + static_cast<int>(k));
            flat_labels_.push_back(l);
            ++off;
        }
    }
}

SpacePtr GradedSpace::make(int dmin, int dmax, std::vector<std::vector<std::string>> labels) {
    return std::make_shared<const GradedSpace>(dmin, dmax, std::move(labels));
}

SpacePtr GradedSpace::from_map(const std::map<int, std::vector<std::string>>& labels) {
    int lo = 0, hi = -1;
    bool first = true;
    for (const auto& [deg, ls] : labels) {
        if (ls.empty()) continue;
        if (first) lo = hi = deg, first = false;
        lo = std::min(lo, deg);
        hi = std::max(hi, deg);
    }
    if (first) return make(0, -1, {});
    std::vector<std::vector<std::string>> blocks(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& [deg, ls] : labels)
        if (!ls.empty()) blocks[static_cast<std::size_t>(deg - lo)] = ls;
    return make(lo, hi, std::move(blocks));
}

std::size_t GradedSpace::dim(int deg) const {
    if (!in_window(deg)) return 0;
    return labels_[static_cast<std::size_t>(deg - dmin_)].size();
}

std::size_t GradedSpace::offset(int deg) const {
    if (deg < dmin_) return 0;
    if (deg > dmax_) return total_dim();
    return offsets_[static_cast<std::size_t>(deg - dmin_)];
}

const std::vector<std::string>& GradedSpace::labels(int deg) const {
    static const std::vector<std::string> empty;
    if (!in_window(deg)) return empty;
    return labels_[static_cast<std::size_t>(deg - dmin_)];
}

std::optional<std::size_t> GradedSpace::find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Vector GradedSpace::component(const Vector& v, int deg) const {
    const std::size_t o = offset(deg), n = dim(deg);
    return Vector(v.begin() + static_cast<std::ptrdiff_t>(o), v.begin() + static_cast<std::ptrdiff_t>(o + n));
}

Vector GradedSpace::embed(const Vector& part, int deg) const {
    Vector v = zeros(total_dim());
    const std::size_t o = offset(deg);
    for (std::size_t k = 0; k < part.size(); ++k) v[o + k] = part[k];
    return v;
}

std::optional<int> GradedSpace::homogeneous_degree(const Vector& v) const {
    std::optional<int> deg;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        if (deg && *deg != degree_of_[i]) return std::nullopt;
        deg = degree_of_[i];
    }
    return deg;
}

bool GradedSpace::is_homogeneous_of(const Vector& v, int deg) const {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0 && degree_of_[i] != deg) return false;
    return true;
}

std::string GradedSpace::format(const Vector& v) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        Scalar c = v[i];
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (c < 0) c = -c;
        if (c != 1) os << format_scalar(c) << "*";
        os << flat_labels_[i];
        first = false;
    }
    return first ? "0" : os.str();
}

bool GradedSpace::operator==(const GradedSpace& other) const {
    if (total_dim() == 0 && other.total_dim() == 0) return true;
    return dmin_ == other.dmin_ && dmax_ == other.dmax_ && labels_ == other.labels_;
}

// ------------------------------------------------------------------ GradedMap

GradedMap::GradedMap(SpacePtr source, SpacePtr target, int degree, Matrix full)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree), full_(std::move(full)) {
    if (full_.rows() != target_->total_dim() || full_.cols() != source_->total_dim())
        throw Error(ErrorCode::InvalidInput, "graded map: matrix shape does not match basis sizes");
    for (std::size_t c = 0; c < full_.cols(); ++c)
        for (std::size_t r = 0; r < full_.rows(); ++r)
            if (full_(r, c) != 0 && target_->degree_of(r) != source_->degree_of(c) + degree_)
                throw Error(ErrorCode::DegreeWindowViolation,
                            "map of degree " + std::to_string(degree_) + " sends '" + source_->label(c) +
                                "' (degree " + std::to_string(source_->degree_of(c)) + ") to '" +
                                target_->label(r) + "' (degree " + std::to_string(target_->degree_of(r)) + ")");
}

GradedMap GradedMap::zero(SpacePtr source, SpacePtr target, int degree) {
    Matrix m(target->total_dim(), source->total_dim());
    return GradedMap(std::move(source), std::move(target), degree, std::move(m));
}

GradedMap GradedMap::identity(SpacePtr space) {
    const std::size_t n = space->total_dim();
    return GradedMap(space, space, 0, Matrix::identity(n));
}

Matrix GradedMap::block(int i) const {
    std::vector<std::size_t> rows, cols;
    for (std::size_t k = 0; k < target_->dim(i + degree_); ++k) rows.push_back(target_->offset(i + degree_) + k);
    for (std::size_t k = 0; k < source_->dim(i); ++k) cols.push_back(source_->offset(i) + k);
    return full_.select(rows, cols);
}

GradedMap GradedMap::after(const GradedMap& first) const {
    if (!(*first.target_ == *source_)) throw Error(ErrorCode::TargetMismatch, "composition of incompatible maps");
    return GradedMap(first.source_, target_, degree_ + first.degree_, full_ * first.full_);
}

// --------------------------------------------------------------- ChainComplex

ChainComplex::ChainComplex(SpacePtr space, Matrix differential)
    : space_(space), d_(space, space, 1, std::move(differential)) {
    const Matrix dd = d_.matrix() * d_.matrix();
    for (std::size_t c = 0; c < dd.cols(); ++c)
        for (std::size_t r = 0; r < dd.rows(); ++r)
            if (dd(r, c) != 0)
                throw Error(ErrorCode::DifferentialNotSquareZero,
                            "d(d(" + space_->label(c) + ")) has coefficient " + format_scalar(dd(r, c)) + " on '" +
                                space_->label(r) + "' (degree " + std::to_string(space_->degree_of(c)) + ")");
}

// ----------------------------------------------------------------- Cohomology

std::size_t CohomologyResult::dim(int deg) const {
    auto it = degrees_.find(deg);
    return it == degrees_.end() ? 0 : it->second.dim;
}

const DegreeCohomology& CohomologyResult::at(int deg) const {
    auto it = degrees_.find(deg);
    if (it == degrees_.end())
        throw Error(ErrorCode::DegreeWindowViolation, "no cohomology computed in degree " + std::to_string(deg));
    return it->second;
}

Vector CohomologyResult::classify(int deg, const Vector& cycle) const {
    auto it = degrees_.find(deg);
    if (it == degrees_.end()) return {};
    return it->second.projection.apply(space_->component(cycle, deg));
}

std::string CohomologyResult::class_label(int deg, std::size_t k) const {
    const Vector& rep = at(deg).representatives.at(k);
    std::size_t nonzero = 0;
    std::size_t where = 0;
    for (std::size_t i = 0; i < rep.size(); ++i)
        if (rep[i] != 0) ++nonzero, where = i;
    if (nonzero == 1 && rep[where] == 1) return space_->label(where);
    return "(" + space_->format(rep) + ")";
}

CohomologyResult compute_cohomology(const ChainComplex& complex) {
    const auto& V = *complex.space();
    std::map<int, DegreeCohomology> out;
    for (int i = V.dmin(); i <= V.dmax(); ++i) {
        DegreeCohomology dc;
        dc.degree = i;
        const std::size_t n = V.dim(i);
        const Matrix d_out = complex.d_block(i);
        const Matrix z = kernel_basis(d_out);
        const Matrix d_in = complex.d_block(i - 1);
        const auto bcols = independent_columns(d_in);
        std::vector<std::size_t> all_rows(n);
        for (std::size_t r = 0; r < n; ++r) all_rows[r] = r;
        const Matrix b = d_in.select(all_rows, bcols);
        dc.cycles = z.cols();
        dc.boundaries = b.cols();

        const RowEchelon e = rref(b.hstack(z));
        std::vector<Vector> reps;
        for (auto p : e.pivots)
            if (p >= b.cols()) reps.push_back(z.col(p - b.cols()));
        dc.dim = reps.size();

        Matrix q = b.hstack(Matrix::from_columns(n, reps));
        std::vector<Vector> cols = q.columns();
        for (auto j : complement_indices(q)) cols.push_back(unit(n, j));
        const Matrix s_inv = inverse(Matrix::from_columns(n, cols));
        dc.projection = Matrix(dc.dim, n);
        for (std::size_t k = 0; k < dc.dim; ++k)
            for (std::size_t c = 0; c < n; ++c) dc.projection(k, c) = s_inv(b.cols() + k, c);
        for (const auto& r : reps) dc.representatives.push_back(V.embed(r, i));
        out.emplace(i, std::move(dc));
    }
    return CohomologyResult(complex.space(), std::move(out));
}

// ---------------------------------------------------------------- Hom, shift

ChainComplex hom_complex(const ChainComplex& v, const ChainComplex& w, int nmin, int nmax) {
    const auto& V = *v.space();
    const auto& W = *w.space();
    struct Elementary {
        std::size_t src, dst;
    };
    std::map<int, std::vector<std::string>> labels;
    std::map<int, std::vector<Elementary>> maps;
    for (int n = nmin; n <= nmax; ++n) {
        for (std::size_t j = 0; j < V.total_dim(); ++j)
            for (std::size_t k = 0; k < W.total_dim(); ++k)
                if (W.degree_of(k) - V.degree_of(j) == n) {
                    labels[n].push_back("[" + V.label(j) + "->" + W.label(k) + "]");
                    maps[n].push_back({j, k});
                }
    }
    std::size_t total = 0;
    for (const auto& [n, l] : labels) total += l.size();
    if (total == 0)
        throw Error(ErrorCode::WindowTooSmall, "Hom window [" + std::to_string(nmin) + ", " + std::to_string(nmax) +
                                                   "] contains no nonzero Hom^n");
    std::vector<std::vector<std::string>> blocks;
    for (int n = nmin; n <= nmax; ++n) blocks.push_back(labels[n]);
    auto space = GradedSpace::make(nmin, nmax, blocks);

    auto index_of = [&](int n, std::size_t src, std::size_t dst) -> std::optional<std::size_t> {
        if (n < nmin || n > nmax) return std::nullopt;
        const auto& ms = maps[n];
        for (std::size_t t = 0; t < ms.size(); ++t)
            if (ms[t].src == src && ms[t].dst == dst) return space->offset(n) + t;
        return std::nullopt;
    };

    const Matrix& dv = v.differential().matrix();
    const Matrix& dw = w.differential().matrix();
    Matrix d(space->total_dim(), space->total_dim());
    for (int n = nmin; n <= nmax; ++n) {
        const Scalar sign = (n % 2 == 0) ? 1 : -1;
        for (std::size_t t = 0; t < maps[n].size(); ++t) {
            const auto [j, k] = maps[n][t];
            const std::size_t col = space->offset(n) + t;
            // d_W f : v_j -> d_W(w_k)
            for (std::size_t l = 0; l < W.total_dim(); ++l)
                if (dw(l, k) != 0)
                    if (auto row = index_of(n + 1, j, l)) d(*row, col) += dw(l, k);
            // -(-1)^n f d_V : v_m -> (d_V)_{j m} w_k
            for (std::size_t m = 0; m < V.total_dim(); ++m)
                if (dv(j, m) != 0)
                    if (auto row = index_of(n + 1, m, k)) d(*row, col) -= sign * dv(j, m);
        }
    }
    return ChainComplex(space, std::move(d));
}

ChainComplex shift(const ChainComplex& v, int n) {
    const auto& V = *v.space();
    std::vector<std::vector<std::string>> blocks;
    for (int i = V.dmin(); i <= V.dmax(); ++i) blocks.push_back(V.labels(i));
    auto space = GradedSpace::make(V.dmin() - n, V.dmax() - n, blocks);
    const Scalar sign = (n % 2 == 0) ? 1 : -1;
    return ChainComplex(space, v.differential().matrix().scaled(sign));
}

ChainComplex htp_complex(const ChainComplex& v, const ChainComplex& w, int nmin, int nmax) {
    return hom_complex(shift(v, 1), w, nmin, nmax);
}

ChainComplex direct_sum(const ChainComplex& a, const std::string& prefix_a, const ChainComplex& b,
                        const std::string& prefix_b) {
    const auto& A = *a.space();
    const auto& B = *b.space();
    std::map<int, std::vector<std::string>> labels;
    for (int i = A.dmin(); i <= A.dmax(); ++i)
        for (const auto& l : A.labels(i)) labels[i].push_back(prefix_a + ":" + l);
    for (int i = B.dmin(); i <= B.dmax(); ++i)
        for (const auto& l : B.labels(i)) labels[i].push_back(prefix_b + ":" + l);
    auto space = GradedSpace::from_map(labels);
    auto pos_a = [&](std::size_t k) {
        const int deg = A.degree_of(k);
        return space->offset(deg) + (k - A.offset(deg));
    };
    auto pos_b = [&](std::size_t k) {
        const int deg = B.degree_of(k);
        return space->offset(deg) + A.dim(deg) + (k - B.offset(deg));
    };
    Matrix d(space->total_dim(), space->total_dim());
    const Matrix& da = a.differential().matrix();
    const Matrix& db = b.differential().matrix();
    for (std::size_t c = 0; c < A.total_dim(); ++c)
        for (std::size_t r = 0; r < A.total_dim(); ++r)
            if (da(r, c) != 0) d(pos_a(r), pos_a(c)) = da(r, c);
    for (std::size_t c = 0; c < B.total_dim(); ++c)
        for (std::size_t r = 0; r < B.total_dim(); ++r)
            if (db(r, c) != 0) d(pos_b(r), pos_b(c)) = db(r, c);
    return ChainComplex(space, std::move(d));
}

Subcomplex subcomplex(const ChainComplex& ambient, const std::map<int, Matrix>& basis_by_degree) {
    const auto& V = *ambient.space();
    std::map<int, std::vector<std::string>> labels;
    std::vector<Vector> inclusion_cols;
    std::map<int, std::size_t> count;
    for (const auto& [deg, basis] : basis_by_degree) {
        if (basis.rows() != V.dim(deg))
            throw Error(ErrorCode::InvalidInput, "subcomplex basis in degree " + std::to_string(deg) +
                                                     " has wrong row count");
        for (std::size_t c = 0; c < basis.cols(); ++c) {
            Vector full = V.embed(basis.col(c), deg);
            labels[deg].push_back(V.format(full));
            inclusion_cols.push_back(std::move(full));
        }
        count[deg] = basis.cols();
    }
    auto space = GradedSpace::from_map(labels);
    Matrix inclusion = Matrix::from_columns(V.total_dim(), inclusion_cols);
    Matrix d(space->total_dim(), space->total_dim());
    for (const auto& [deg, basis] : basis_by_degree) {
        const Matrix d_block = ambient.d_block(deg);
        auto next = basis_by_degree.find(deg + 1);
        for (std::size_t c = 0; c < basis.cols(); ++c) {
            const Vector image = d_block.apply(basis.col(c));
            if (is_zero(image)) continue;
            if (next == basis_by_degree.end())
                throw Error(ErrorCode::InvalidInput, "span is not closed under d in degree " + std::to_string(deg));
            auto coords = solve(next->second, image);
            if (!coords)
                throw Error(ErrorCode::InvalidInput, "span is not closed under d in degree " + std::to_string(deg));
            for (std::size_t k = 0; k < coords->size(); ++k)
                if ((*coords)[k] != 0) d(space->offset(deg + 1) + k, space->offset(deg) + c) = (*coords)[k];
        }
    }
    return Subcomplex{ChainComplex(space, std::move(d)), std::move(inclusion)};
}

std::map<int, Matrix> induced_on_cohomology(const GradedMap& f, const CohomologyResult& src,
                                            const CohomologyResult& tgt) {
    std::map<int, Matrix> out;
    for (const auto& [deg, dc] : src.degrees()) {
        const int tdeg = deg + f.degree();
        Matrix m(tgt.dim(tdeg), dc.dim);
        for (std::size_t k = 0; k < dc.dim; ++k) {
            if (tgt.dim(tdeg) == 0) break;
            m.set_col(k, tgt.classify(tdeg, f.apply(dc.representatives[k])));
        }
        out.emplace(deg, std::move(m));
    }
    return out;
}

bool is_chain_map(const GradedMap& f, const ChainComplex& src, const ChainComplex& tgt) {
    return f.matrix() * src.differential().matrix() == tgt.differential().matrix() * f.matrix();
}

}  // namespace mcdeform
