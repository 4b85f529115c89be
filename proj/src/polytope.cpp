#include "gptlab/polytope.hpp"

#include <algorithm>

#include "gptlab/lp.hpp"

namespace gptlab {

Polytope Polytope::from_vertices(int ambient_dim, std::vector<QVec> vertices) {
    if (vertices.empty()) throw EmptyRegionError("polytope with empty vertex list");
    for (const QVec& v : vertices)
        if (v.size() != ambient_dim) throw std::invalid_argument("vertex dimension mismatch");
    Polytope p;
    p.ambient_dim_ = ambient_dim;
    p.vertices_ = sorted_vertex_set(std::move(vertices));
    p.has_vrep_ = true;
    return p;
}

Polytope Polytope::from_halfspaces(int ambient_dim, std::vector<Halfspace> facets) {
    for (const Halfspace& h : facets)
        if (h.normal.size() != ambient_dim) throw std::invalid_argument("facet dimension mismatch");
    Polytope p;
    p.ambient_dim_ = ambient_dim;
    p.facets_ = std::move(facets);
    p.has_hrep_ = true;
    return p;
}

std::string Polytope::rep_status() const {
    if (has_vrep_ && has_hrep_) return "both";
    if (has_vrep_) return "vrep";
    if (has_hrep_) return "hrep";
    return "none";
}

const std::vector<QVec>& Polytope::vertices() const {
    if (!has_vrep_) throw GeometryError("vertex representation not populated");
    return vertices_;
}

const std::vector<Halfspace>& Polytope::facets() const {
    if (!has_hrep_) throw GeometryError("facet representation not populated");
    return facets_;
}

std::vector<QVec> sorted_vertex_set(std::vector<QVec> vertices) {
    std::sort(vertices.begin(), vertices.end(), lex_less);
    vertices.erase(std::unique(vertices.begin(), vertices.end(),
                               [](const QVec& a, const QVec& b) { return a == b; }),
                   vertices.end());
    return vertices;
}

// ---------------------------------------------------------------------------
// Double description on a pointed cone.

namespace {

struct Ray {
    QVec dir;
    std::vector<bool> tight;  // per processed row
};

std::vector<bool> tight_rows(const std::vector<QVec>& rows, size_t processed, const QVec& dir) {
    std::vector<bool> t(processed);
    for (size_t i = 0; i < processed; ++i) t[i] = rows[i].dot(dir) == 0;
    return t;
}

bool adjacent(const std::vector<Ray>& rays, size_t a, size_t b) {
    const std::vector<bool>& za = rays[a].tight;
    const std::vector<bool>& zb = rays[b].tight;
    for (size_t r = 0; r < rays.size(); ++r) {
        if (r == a || r == b) continue;
        bool covers = true;
        for (size_t i = 0; i < za.size() && covers; ++i)
            if (za[i] && zb[i] && !rays[r].tight[i]) covers = false;
        if (covers) return false;
    }
    return true;
}

}  // namespace

std::vector<QVec> extreme_rays(const std::vector<QVec>& input_rows, int dim) {
    // Deduplicate rows up to positive scaling; keeps intermediate sets small.
    std::vector<QVec> rows;
    for (const QVec& r : input_rows) {
        QVec p = primitive(r);
        bool zero = true;
        for (Eigen::Index i = 0; i < p.size(); ++i)
            if (p(i) != 0) zero = false;
        if (zero) continue;
        bool dup = false;
        for (const QVec& q : rows)
            if (q == p) dup = true;
        if (!dup) rows.push_back(std::move(p));
    }

    // Seed with a full-rank subset so every intermediate cone is pointed.
    QMat stacked(static_cast<Eigen::Index>(rows.size()), dim);
    for (size_t i = 0; i < rows.size(); ++i) stacked.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    std::vector<int> seed = independent_columns(stacked.transpose());
    if (static_cast<int>(seed.size()) != dim)
        throw GeometryError("extreme_rays: cone is not pointed");

    std::vector<QVec> ordered;
    std::vector<bool> used(rows.size(), false);
    QMat seed_mat(dim, dim);
    for (size_t k = 0; k < seed.size(); ++k) {
        ordered.push_back(rows[static_cast<size_t>(seed[k])]);
        used[static_cast<size_t>(seed[k])] = true;
        seed_mat.row(static_cast<Eigen::Index>(k)) = rows[static_cast<size_t>(seed[k])].transpose();
    }
    for (size_t i = 0; i < rows.size(); ++i)
        if (!used[i]) ordered.push_back(rows[i]);

    // Initial rays: columns of seed_mat⁻¹.
    std::vector<Ray> rays;
    for (int j = 0; j < dim; ++j) {
        QVec e = qvec_zero(dim);
        e(j) = 1;
        auto col = solve_linear(seed_mat, e);
        if (!col) throw GeometryError("extreme_rays: seed inversion failed");
        Ray r;
        r.dir = primitive(*col);
        rays.push_back(std::move(r));
    }
    for (Ray& r : rays) r.tight = tight_rows(ordered, static_cast<size_t>(dim), r.dir);

    for (size_t next = static_cast<size_t>(dim); next < ordered.size(); ++next) {
        const QVec& a = ordered[next];
        std::vector<size_t> pos, neg;
        std::vector<Rat> val(rays.size());
        for (size_t i = 0; i < rays.size(); ++i) {
            val[i] = a.dot(rays[i].dir);
            if (val[i] > 0) pos.push_back(i);
            else if (val[i] < 0) neg.push_back(i);
        }
        if (neg.empty()) {
            for (Ray& r : rays) r.tight = tight_rows(ordered, next + 1, r.dir);
            continue;
        }
        std::vector<Ray> kept;
        for (size_t i = 0; i < rays.size(); ++i)
            if (val[i] >= 0) kept.push_back(rays[i]);
        std::vector<QVec> fresh;
        for (size_t p : pos)
            for (size_t n : neg)
                if (adjacent(rays, p, n))
                    fresh.push_back(primitive(val[p] * rays[n].dir - val[n] * rays[p].dir));
        rays = std::move(kept);
        for (QVec& dir : fresh) {
            Ray r;
            r.dir = std::move(dir);
            rays.push_back(std::move(r));
        }
        for (Ray& r : rays) r.tight = tight_rows(ordered, next + 1, r.dir);
    }

    std::vector<QVec> out;
    out.reserve(rays.size());
    for (Ray& r : rays) out.push_back(std::move(r.dir));
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end(), [](const QVec& a, const QVec& b) { return a == b; }),
              out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Affine chart.

AffineChart::AffineChart(const std::vector<QVec>& points) {
    if (points.empty()) throw std::invalid_argument("AffineChart: empty point set");
    origin_ = points[0];
    const Eigen::Index d = origin_.size();
    QMat diffs(d, static_cast<Eigen::Index>(points.size() - 1));
    for (size_t i = 1; i < points.size(); ++i) diffs.col(static_cast<Eigen::Index>(i - 1)) = points[i] - origin_;
    std::vector<int> picked = diffs.cols() > 0 ? independent_columns(diffs) : std::vector<int>{};
    basis_ = QMat(d, static_cast<Eigen::Index>(picked.size()));
    for (size_t k = 0; k < picked.size(); ++k) basis_.col(static_cast<Eigen::Index>(k)) = diffs.col(picked[k]);
    pinv_ = picked.empty() ? QMat(0, d) : left_pseudo_inverse(basis_);
    QMat bt = basis_.transpose();
    QMat ker = kernel_basis(bt);  // vectors orthogonal to the direction space
    for (Eigen::Index j = 0; j < ker.cols(); ++j) hull_normals_.push_back(primitive_signed(QVec(ker.col(j))));
}

QVec AffineChart::to_chart(const QVec& ambient) const {
    return pinv_ * (ambient - origin_);
}

QVec AffineChart::to_ambient(const QVec& chart) const {
    return origin_ + basis_ * chart;
}

bool AffineChart::on_hull(const QVec& ambient) const {
    for (const QVec& w : hull_normals_)
        if (w.dot(ambient) != w.dot(origin_)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Conversions.

namespace {

Halfspace canonical_halfspace(QVec normal, Rat offset) {
    QVec joint(normal.size() + 1);
    joint.head(normal.size()) = normal;
    joint(normal.size()) = offset;
    joint = primitive(joint);
    Halfspace h;
    h.normal = joint.head(normal.size());
    h.offset = joint(normal.size());
    return h;
}

bool halfspace_less(const Halfspace& a, const Halfspace& b) {
    if (a.offset != b.offset) return a.offset < b.offset;
    return lex_less(a.normal, b.normal);
}

bool halfspace_eq(const Halfspace& a, const Halfspace& b) {
    return a.offset == b.offset && a.normal == b.normal;
}

}  // namespace

Polytope dd_vrep_to_hrep(const Polytope& p) {
    const std::vector<QVec>& verts = p.vertices();
    const int d = p.ambient_dim();
    AffineChart chart(verts);
    const int r = chart.dim();

    std::vector<Halfspace> facets;
    if (r > 0) {
        std::vector<QVec> rows;
        rows.reserve(verts.size());
        for (const QVec& v : verts) {
            QVec row(r + 1);
            row(0) = 1;
            row.tail(r) = chart.to_chart(v);
            rows.push_back(std::move(row));
        }
        // Facets of the chart polytope are extreme rays of its polar cone.
        for (const QVec& ray : extreme_rays(rows, r + 1)) {
            QVec alpha = ray.tail(r);
            QVec normal = chart.left_inverse().transpose() * (-alpha);
            Rat offset = ray(0) + normal.dot(chart.origin());
            facets.push_back(canonical_halfspace(std::move(normal), std::move(offset)));
        }
    }
    for (const QVec& w : chart.hull_normals()) {
        Rat c = w.dot(chart.origin());
        facets.push_back(canonical_halfspace(w, c));
        facets.push_back(canonical_halfspace(-w, -c));
    }
    std::sort(facets.begin(), facets.end(), halfspace_less);
    facets.erase(std::unique(facets.begin(), facets.end(), halfspace_eq), facets.end());

    Polytope out;
    out.ambient_dim_ = d;
    out.vertices_ = verts;
    out.has_vrep_ = true;
    out.facets_ = std::move(facets);
    out.has_hrep_ = true;
    return out;
}

Polytope dd_hrep_to_vrep(const Polytope& p) {
    const std::vector<Halfspace>& facets = p.facets();
    const int d = p.ambient_dim();

    {
        LPProblem feas = LPProblem::feasibility(d);
        for (const Halfspace& h : facets) feas.add(h.normal, Rel::LE, h.offset);
        LPResult res = lp_solve(feas);
        if (res.status == LPStatus::Infeasible) throw EmptyRegionError("H-representation is infeasible");
    }

    // Homogenize: normal·x <= offset·t, t >= 0, then enumerate extreme rays.
    std::vector<QVec> rows;
    rows.reserve(facets.size() + 1);
    for (const Halfspace& h : facets) {
        QVec row(d + 1);
        row(0) = h.offset;
        row.tail(d) = -h.normal;
        rows.push_back(std::move(row));
    }
    {
        QVec t_nonneg = qvec_zero(d + 1);
        t_nonneg(0) = 1;
        rows.push_back(std::move(t_nonneg));
    }

    QMat stacked(static_cast<Eigen::Index>(rows.size()), d + 1);
    for (size_t i = 0; i < rows.size(); ++i) stacked.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    if (exact_rank(stacked) < d + 1)
        throw UnboundedRegionError("feasible region contains a line");

    std::vector<QVec> verts;
    for (const QVec& ray : extreme_rays(rows, d + 1)) {
        if (ray(0) == 0) throw UnboundedRegionError("feasible region is unbounded");
        QVec v = ray.tail(d) / ray(0);
        verts.push_back(std::move(v));
    }
    if (verts.empty()) throw EmptyRegionError("H-representation has no vertices");

    Polytope out;
    out.ambient_dim_ = d;
    out.facets_ = facets;
    out.has_hrep_ = true;
    out.vertices_ = sorted_vertex_set(std::move(verts));
    out.has_vrep_ = true;
    return out;
}

Polytope with_vrep(const Polytope& p) {
    if (p.has_vrep()) return p;
    return dd_hrep_to_vrep(p);
}

Polytope with_hrep(const Polytope& p) {
    if (p.has_hrep()) return p;
    return dd_vrep_to_hrep(p);
}

bool in_convex_hull(const std::vector<QVec>& points, const QVec& x) {
    if (points.empty()) return false;
    const int n = static_cast<int>(points.size());
    const Eigen::Index d = points[0].size();
    LPProblem lp = LPProblem::feasibility(n);
    for (int j = 0; j < n; ++j) lp.set_lower(j, Rat(0));
    for (Eigen::Index row = 0; row < d; ++row) {
        QVec coeff(n);
        for (int j = 0; j < n; ++j) coeff(j) = points[static_cast<size_t>(j)](row);
        lp.add(std::move(coeff), Rel::EQ, x(row));
    }
    QVec ones(n);
    for (int j = 0; j < n; ++j) ones(j) = 1;
    lp.add(std::move(ones), Rel::EQ, Rat(1));
    return lp_solve(lp).status != LPStatus::Infeasible;
}

bool contains(const Polytope& p, const QVec& x) {
    if (x.size() != p.ambient_dim()) throw std::invalid_argument("contains: dimension mismatch");
    if (p.has_hrep()) {
        for (const Halfspace& h : p.facets())
            if (h.normal.dot(x) > h.offset) return false;
        return true;
    }
    return in_convex_hull(p.vertices(), x);
}

std::vector<QVec> prune_to_extreme(const std::vector<QVec>& points) {
    std::vector<QVec> current = sorted_vertex_set(points);
    for (size_t i = 0; i < current.size();) {
        std::vector<QVec> others;
        others.reserve(current.size() - 1);
        for (size_t j = 0; j < current.size(); ++j)
            if (j != i) others.push_back(current[j]);
        if (!others.empty() && in_convex_hull(others, current[i]))
            current.erase(current.begin() + static_cast<std::ptrdiff_t>(i));
        else
            ++i;
    }
    return current;
}

bool same_polytope(const Polytope& a, const Polytope& b) {
    if (a.ambient_dim() != b.ambient_dim()) return false;
    std::vector<QVec> va = with_vrep(a).vertices();
    std::vector<QVec> vb = with_vrep(b).vertices();
    return va == vb;
}

}  // namespace gptlab
