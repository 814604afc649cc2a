#include "stresslab/lp.hpp"

namespace stresslab::lp {

namespace {

// Standard form tableau for  max c.y  s.t.  M y = r,  y >= 0,  r >= 0.
class Tableau {
  public:
    Tableau(linalg::DenseMatrix rows, std::vector<std::size_t> basis, std::size_t ncols)
        : t_(std::move(rows)), basis_(std::move(basis)), n_(ncols) {}

    // Returns false when unbounded.  Columns >= `allowed` never enter.
    bool optimize(const RowVector& c, std::size_t allowed) {
        load_objective(c);
        for (;;) {
            std::size_t enter = n_;
            for (std::size_t j = 0; j < allowed; ++j) {
                if (obj_[j].sign() < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == n_) return true;
            std::size_t leave = t_.size();
            Rational best;
            for (std::size_t i = 0; i < t_.size(); ++i) {
                if (t_[i][enter].sign() <= 0) continue;
                Rational ratio = t_[i][n_] / t_[i][enter];
                if (leave == t_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == t_.size()) return false;
            pivot(leave, enter);
        }
    }

    Rational objective_value() const { return obj_[n_]; }

    RowVector solution() const {
        RowVector y(n_);
        for (std::size_t i = 0; i < t_.size(); ++i) y[basis_[i]] = t_[i][n_];
        return y;
    }

    // Replaces basic columns >= limit by structural ones where possible.
    void drive_out(std::size_t limit) {
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (basis_[i] < limit) continue;
            for (std::size_t j = 0; j < limit; ++j) {
                if (t_[i][j].sign() != 0) {
                    pivot(i, j);
                    break;
                }
            }
        }
    }

  private:
    void load_objective(const RowVector& c) {
        c_ = c;
        obj_.assign(n_ + 1, Rational(0));
        for (std::size_t j = 0; j < n_; ++j) obj_[j] = -c[j];
        for (std::size_t i = 0; i < t_.size(); ++i) {
            const Rational& cb = c[basis_[i]];
            if (cb.sign() == 0) continue;
            for (std::size_t j = 0; j <= n_; ++j) obj_[j] += cb * t_[i][j];
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        Rational p = t_[r][c];
        for (auto& x : t_[r]) x /= p;
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (i == r || t_[i][c].sign() == 0) continue;
            Rational f = t_[i][c];
            for (std::size_t j = 0; j <= n_; ++j) {
                if (t_[r][j].sign() != 0) t_[i][j] -= f * t_[r][j];
            }
        }
        if (obj_.size() == n_ + 1 && obj_[c].sign() != 0) {
            Rational f = obj_[c];
            for (std::size_t j = 0; j <= n_; ++j) {
                if (t_[r][j].sign() != 0) obj_[j] -= f * t_[r][j];
            }
        }
        basis_[r] = c;
    }

    linalg::DenseMatrix t_;
    std::vector<std::size_t> basis_;
    std::size_t n_;
    RowVector c_;
    RowVector obj_;
};

}  // namespace

Result maximize(const linalg::DenseMatrix& a, const RowVector& b, const RowVector& c) {
    const std::size_t m = a.size();
    const std::size_t n = c.size();
    // Columns: x+ (n), x- (n), slack (m), artificial (m).
    const std::size_t structural = 2 * n + m;
    const std::size_t total = structural + m;
    linalg::DenseMatrix rows(m, RowVector(total + 1));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        const int s = b[i].sign() < 0 ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j) {
            rows[i][j] = s * a[i][j];
            rows[i][n + j] = -s * a[i][j];
        }
        rows[i][2 * n + i] = s;
        rows[i][structural + i] = 1;
        rows[i][total] = s * b[i];
        basis[i] = structural + i;
    }
    Tableau tab(std::move(rows), std::move(basis), total);

    RowVector phase1(total);
    for (std::size_t i = 0; i < m; ++i) phase1[structural + i] = -1;
    tab.optimize(phase1, total);
    Result res;
    if (tab.objective_value().sign() != 0) {
        res.status = Status::infeasible;
        return res;
    }
    tab.drive_out(structural);

    RowVector phase2(total);
    for (std::size_t j = 0; j < n; ++j) {
        phase2[j] = c[j];
        phase2[n + j] = -c[j];
    }
    if (!tab.optimize(phase2, structural)) {
        res.status = Status::unbounded;
        return res;
    }
    RowVector y = tab.solution();
    res.status = Status::optimal;
    res.x.assign(n, Rational(0));
    for (std::size_t j = 0; j < n; ++j) res.x[j] = y[j] - y[n + j];
    res.value = 0;
    for (std::size_t j = 0; j < n; ++j) res.value += c[j] * res.x[j];
    return res;
}

std::optional<RowVector> feasible_point(const linalg::DenseMatrix& a, const RowVector& b, std::size_t nvars) {
    Result r = maximize(a, b, RowVector(nvars));
    if (r.status != Status::optimal) return std::nullopt;
    return r.x;
}

}  // namespace stresslab::lp
