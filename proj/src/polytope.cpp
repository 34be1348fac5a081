#include "wvctx/polytope.hpp"

#include <algorithm>
#include <stdexcept>

namespace wvctx::polytope {

namespace {

using Vec = std::vector<Rational>;

Rational dot(const Vec& a, const Vec& b) {
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

/// Scale to coprime integer entries; positive scaling only.
void scale_primitive(Vec& v) {
    BigInt l = 1;
    for (const auto& q : v)
        if (q != 0) l = lcm(l, denominator(q));
    BigInt g = 0;
    std::vector<BigInt> ints(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        ints[i] = numerator(v[i]) * (l / denominator(v[i]));
        g = gcd(g, abs(ints[i]));
    }
    if (g == 0) return;
    for (size_t i = 0; i < v.size(); ++i) v[i] = Rational(ints[i] / g);
}

/// In-place reduced row echelon form; returns the pivot column of each
/// surviving row. Zero rows are dropped.
std::vector<size_t> rref(std::vector<Vec>& rows) {
    std::vector<size_t> pivots;
    if (rows.empty()) return pivots;
    const size_t cols = rows[0].size();
    size_t r = 0;
    for (size_t col = 0; col < cols && r < rows.size(); ++col) {
        size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[r], rows[pivot]);
        const Rational lead = rows[r][col];
        for (size_t j = 0; j < cols; ++j) rows[r][j] /= lead;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col] == 0) continue;
            const Rational f = rows[i][col];
            for (size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivots.push_back(col);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

int rank_of(std::vector<Vec> rows) {
    return static_cast<int>(rref(rows).size());
}

/// Rank by fraction-free (Bareiss) elimination over integers. The rows fed
/// in are primitive integer vectors, so no rational arithmetic is needed.
int integer_rank(std::vector<std::vector<BigInt>> m) {
    if (m.empty()) return 0;
    const size_t cols = m[0].size();
    BigInt prev = 1;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < m.size(); ++c) {
        size_t p = r;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[r], m[p]);
        for (size_t i = r + 1; i < m.size(); ++i) {
            for (size_t j = c + 1; j < cols; ++j)
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    return static_cast<int>(r);
}

/// Fixed-width bitset over the inserted constraints of a cone.
class TightMask {
  public:
    void append(bool bit) {
        const size_t idx = size_++;
        if (idx / 64 >= words_.size()) words_.push_back(0);
        if (bit) words_[idx / 64] |= uint64_t(1) << (idx % 64);
    }
    static TightMask intersect(const TightMask& a, const TightMask& b) {
        TightMask out;
        out.size_ = std::min(a.size_, b.size_);
        out.words_.resize((out.size_ + 63) / 64, 0);
        for (size_t w = 0; w < out.words_.size(); ++w) out.words_[w] = a.words_[w] & b.words_[w];
        return out;
    }
    int count() const {
        int c = 0;
        for (uint64_t w : words_) c += __builtin_popcountll(w);
        return c;
    }
    bool test(size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
    static TightMask all_ones(size_t bits) {
        TightMask out;
        for (size_t i = 0; i < bits; ++i) out.append(true);
        return out;
    }

  private:
    size_t size_ = 0;
    std::vector<uint64_t> words_;
};

/// Double description of the cone {z : c.z >= 0 for every inserted c},
/// maintained as a lineality basis (reduced echelon form) plus the extreme
/// rays of the pointed part, each reduced modulo the lineality space so that
/// representatives are canonical. Every ray carries the bitset of inserted
/// constraints it is tight on; for a combination ray that set is exactly the
/// intersection of its parents' sets, so no dot products are recomputed.
class ConeDD {
  public:
    explicit ConeDD(int n) : n_(n) {
        lin_.reserve(n);
        for (int i = 0; i < n; ++i) {
            Vec e(n, Rational(0));
            e[i] = 1;
            lin_.push_back(std::move(e));
        }
        lin_pivots_ = rref(lin_);
    }

    void add_inequality(Vec c) {
        scale_primitive(c);
        if (is_zero(c)) return;

        // A lineality direction crossing the halfplane turns into a ray; the
        // rest of the cone is reduced onto the hyperplane c.z = 0.
        bool handled = false;
        for (size_t k = 0; k < lin_.size() && !handled; ++k) {
            Rational d = dot(c, lin_[k]);
            if (d == 0) continue;
            Vec pivot = lin_[k];
            if (d < 0) {
                for (auto& q : pivot) q = -q;
                d = -d;
            }
            lin_.erase(lin_.begin() + static_cast<long>(k));
            for (auto& l : lin_) {
                const Rational f = dot(c, l) / d;
                if (f != 0)
                    for (int i = 0; i < n_; ++i) l[i] -= f * pivot[i];
            }
            lin_pivots_ = rref(lin_);

            // Old rays slide onto the hyperplane; their tight sets against
            // previous constraints are unchanged because the pivot direction
            // was orthogonal to all of them.
            for (size_t i = 0; i < rays_.size(); ++i) {
                const Rational f = dot(c, rays_[i]) / d;
                if (f != 0)
                    for (int j = 0; j < n_; ++j) rays_[i][j] -= f * pivot[j];
                reduce_mod_lineality(rays_[i]);
                scale_primitive(rays_[i]);
                masks_[i].append(true);
            }
            TightMask pivot_mask = TightMask::all_ones(inserted_.size());
            pivot_mask.append(false);
            scale_primitive(pivot);
            rays_.push_back(std::move(pivot));
            masks_.push_back(std::move(pivot_mask));
            handled = true;
        }
        if (handled) {
            record(c);
            return;
        }

        std::vector<Rational> dots(rays_.size());
        std::vector<size_t> plus, zero, minus;
        for (size_t i = 0; i < rays_.size(); ++i) {
            dots[i] = dot(c, rays_[i]);
            if (dots[i] > 0)
                plus.push_back(i);
            else if (dots[i] < 0)
                minus.push_back(i);
            else
                zero.push_back(i);
        }
        if (minus.empty()) {
            for (size_t i = 0; i < rays_.size(); ++i) masks_[i].append(dots[i] == 0);
            record(c);
            return;
        }

        std::vector<Vec> born;
        std::vector<TightMask> born_masks;
        for (size_t p : plus) {
            for (size_t m : minus) {
                TightMask common = TightMask::intersect(masks_[p], masks_[m]);
                if (!adjacent(common)) continue;
                Vec w(n_);
                for (int i = 0; i < n_; ++i) w[i] = dots[p] * rays_[m][i] - dots[m] * rays_[p][i];
                reduce_mod_lineality(w);
                if (is_zero(w)) continue;
                scale_primitive(w);
                bool duplicate = false;
                for (size_t i : zero) duplicate = duplicate || rays_[i] == w;
                for (const auto& existing : born) duplicate = duplicate || existing == w;
                if (duplicate) continue;
                common.append(true);
                born.push_back(std::move(w));
                born_masks.push_back(std::move(common));
            }
        }

        std::vector<Vec> next_rays;
        std::vector<TightMask> next_masks;
        for (size_t i : plus) {
            next_rays.push_back(std::move(rays_[i]));
            TightMask m = std::move(masks_[i]);
            m.append(false);
            next_masks.push_back(std::move(m));
        }
        for (size_t i : zero) {
            next_rays.push_back(std::move(rays_[i]));
            TightMask m = std::move(masks_[i]);
            m.append(true);
            next_masks.push_back(std::move(m));
        }
        for (size_t i = 0; i < born.size(); ++i) {
            next_rays.push_back(std::move(born[i]));
            next_masks.push_back(std::move(born_masks[i]));
        }
        rays_ = std::move(next_rays);
        masks_ = std::move(next_masks);
        record(c);
    }

    void add_equality(Vec c) {
        Vec neg = c;
        for (auto& q : neg) q = -q;
        add_inequality(std::move(c));
        add_inequality(std::move(neg));
    }

    const std::vector<Vec>& lineality() const { return lin_; }
    const std::vector<Vec>& rays() const { return rays_; }

  private:
    void record(Vec c) {
        std::vector<BigInt> ints(c.size());
        for (size_t i = 0; i < c.size(); ++i) ints[i] = numerator(c[i]);  // primitive already
        inserted_int_.push_back(std::move(ints));
        inserted_.push_back(std::move(c));
    }

    void reduce_mod_lineality(Vec& r) const {
        for (size_t k = 0; k < lin_.size(); ++k) {
            const Rational f = r[lin_pivots_[k]];
            if (f != 0)
                for (int i = 0; i < n_; ++i) r[i] -= f * lin_[k][i];
        }
    }

    /// Two rays are adjacent iff their common tight constraints have rank
    /// n - |lineality| - 2, i.e. the minimal face spanned by the pair is
    /// two-dimensional modulo lineality.
    bool adjacent(const TightMask& common) const {
        const int pointed_dim = n_ - static_cast<int>(lin_.size());
        if (pointed_dim <= 2) return true;
        const int need = pointed_dim - 2;
        if (common.count() < need) return false;
        std::vector<std::vector<BigInt>> tight;
        for (size_t i = 0; i < inserted_int_.size(); ++i)
            if (common.test(i)) tight.push_back(inserted_int_[i]);
        return integer_rank(std::move(tight)) == need;
    }

    int n_;
    std::vector<Vec> lin_;
    std::vector<size_t> lin_pivots_;
    std::vector<Vec> rays_;
    std::vector<TightMask> masks_;
    std::vector<Vec> inserted_;
    std::vector<std::vector<BigInt>> inserted_int_;
};

Vec homogenize(const LinearForm& form) {
    Vec row;
    row.reserve(form.coeffs.size() + 1);
    row.push_back(form.constant);
    for (const auto& q : form.coeffs) row.push_back(q);
    return row;
}

LinearForm dehomogenize(const Vec& row) {
    LinearForm form;
    form.constant = row[0];
    form.coeffs.assign(row.begin() + 1, row.end());
    return form;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    const auto bad = [&] { return std::invalid_argument("parse_rational: cannot parse '" + text + "'"); };
    if (text.empty()) throw bad();
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        try {
            const BigInt num(text.substr(0, slash));
            const BigInt den(text.substr(slash + 1));
            if (den == 0) throw bad();
            return Rational(num, den);
        } catch (const std::runtime_error&) {
            throw bad();
        }
    }
    size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }
    BigInt num = 0;
    BigInt den = 1;
    bool any_digit = false;
    bool seen_point = false;
    for (; pos < text.size(); ++pos) {
        const char ch = text[pos];
        if (ch == '.') {
            if (seen_point) throw bad();
            seen_point = true;
        } else if (ch >= '0' && ch <= '9') {
            num = num * 10 + (ch - '0');
            if (seen_point) den *= 10;
            any_digit = true;
        } else {
            throw bad();
        }
    }
    if (!any_digit) throw bad();
    if (negative) num = -num;
    return Rational(num, den);
}

std::string to_fraction_string(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

Rational evaluate(const LinearForm& form, const std::vector<Rational>& point) {
    if (form.coeffs.size() != point.size())
        throw std::invalid_argument("evaluate: dimension mismatch");
    Rational s = form.constant;
    for (size_t i = 0; i < point.size(); ++i) s += form.coeffs[i] * point[i];
    return s;
}

LinearForm normalize_inequality(LinearForm form) {
    Vec row = homogenize(form);
    scale_primitive(row);
    return dehomogenize(row);
}

LinearForm normalize_equality(LinearForm form) {
    Vec row = homogenize(form);
    scale_primitive(row);
    // Orientation: first nonzero coefficient positive (constant as tiebreak).
    for (size_t i = 1; i <= row.size(); ++i) {
        const Rational& q = row[i % row.size()];
        if (q == 0) continue;
        if (q < 0)
            for (auto& w : row) w = -w;
        break;
    }
    return dehomogenize(row);
}

VRep hrep_to_vrep(const HRep& h) {
    const int n = h.dim + 1;  // homogeneous coordinates (x0, x), points at x0 = 1
    ConeDD cone(n);
    for (const auto& eq : h.equalities) {
        if (static_cast<int>(eq.coeffs.size()) != h.dim)
            throw std::invalid_argument("hrep_to_vrep: malformed equality");
        cone.add_equality(homogenize(eq));
    }
    {
        Vec x0(n, Rational(0));
        x0[0] = 1;
        cone.add_inequality(std::move(x0));
    }
    std::vector<Vec> rows;
    for (const auto& ineq : h.inequalities) {
        if (static_cast<int>(ineq.coeffs.size()) != h.dim)
            throw std::invalid_argument("hrep_to_vrep: malformed inequality");
        rows.push_back(homogenize(ineq));
    }
    std::sort(rows.begin(), rows.end());
    for (auto& row : rows) cone.add_inequality(std::move(row));

    VRep out;
    out.dim = h.dim;
    bool at_infinity = !cone.lineality().empty();
    for (const auto& r : cone.rays()) {
        if (r[0] == 0) {
            at_infinity = true;
            continue;
        }
        std::vector<Rational> vertex(r.begin() + 1, r.end());
        for (auto& q : vertex) q /= r[0];
        out.vertices.push_back(std::move(vertex));
    }
    if (out.vertices.empty()) return VRep{h.dim, {}};  // infeasible system
    if (at_infinity) throw std::invalid_argument("hrep_to_vrep: polyhedron is unbounded");
    return canonicalize(std::move(out));
}

HRep vrep_to_hrep(const VRep& v) {
    if (v.vertices.empty()) throw std::invalid_argument("vrep_to_hrep: no vertices");
    // Run double description on the cone of valid inequalities
    // {(b, c) : b + c.v >= 0 for every vertex v}: its lineality space is the
    // affine hull of the points and its extreme rays are the facets.
    const int n = v.dim + 1;
    ConeDD cone(n);
    std::vector<Vec> rows;
    for (const auto& vertex : v.vertices) {
        if (static_cast<int>(vertex.size()) != v.dim)
            throw std::invalid_argument("vrep_to_hrep: malformed vertex");
        Vec row;
        row.reserve(n);
        row.push_back(1);
        for (const auto& q : vertex) row.push_back(q);
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    for (auto& row : rows) cone.add_inequality(std::move(row));

    HRep out;
    out.dim = v.dim;
    for (const auto& l : cone.lineality()) out.equalities.push_back(normalize_equality(dehomogenize(l)));
    for (const auto& r : cone.rays()) {
        LinearForm form = dehomogenize(r);
        if (is_zero(form.coeffs)) continue;  // the vacuous "1 >= 0" direction
        out.inequalities.push_back(normalize_inequality(std::move(form)));
    }
    auto key = [](const LinearForm& f) {
        Vec row;
        row.push_back(f.constant);
        row.insert(row.end(), f.coeffs.begin(), f.coeffs.end());
        return row;
    };
    auto by_key = [&](const LinearForm& a, const LinearForm& b) { return key(a) < key(b); };
    std::sort(out.inequalities.begin(), out.inequalities.end(), by_key);
    std::sort(out.equalities.begin(), out.equalities.end(), by_key);
    return out;
}

bool facet_contains(const HRep& h, const LinearForm& target) {
    if (is_zero(target.coeffs) && target.constant == 0)
        throw std::invalid_argument("facet_contains: zero target");
    const LinearForm want = normalize_inequality(target);
    for (const auto& ineq : h.inequalities) {
        const LinearForm got = normalize_inequality(ineq);
        if (got.constant == want.constant && got.coeffs == want.coeffs) return true;
    }
    return false;
}

int affine_dimension(const VRep& v) {
    if (v.vertices.empty()) return -1;
    std::vector<Vec> diffs;
    for (size_t i = 1; i < v.vertices.size(); ++i) {
        Vec d(v.dim);
        for (int j = 0; j < v.dim; ++j) d[j] = v.vertices[i][j] - v.vertices[0][j];
        diffs.push_back(std::move(d));
    }
    return rank_of(std::move(diffs));
}

VRep canonicalize(VRep v) {
    std::sort(v.vertices.begin(), v.vertices.end());
    v.vertices.erase(std::unique(v.vertices.begin(), v.vertices.end()), v.vertices.end());
    return v;
}

}  // namespace wvctx::polytope
