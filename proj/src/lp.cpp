#include "coprox/lp.hpp"

#include <limits>

#include "coprox/errors.hpp"

namespace coprox::lp {

Problem::Problem(std::size_t num_vars)
    : num_vars_(num_vars), free_(num_vars, false), objective_(num_vars, Rational(0))
{
}

void Problem::set_free(std::size_t var)
{
    if (var >= num_vars_)
        throw DimensionMismatchError("lp: variable index out of range");
    free_[var] = true;
}

void Problem::set_all_free()
{
    std::fill(free_.begin(), free_.end(), true);
}

void Problem::add_row(QVector coeffs, Sense sense, Rational rhs)
{
    if (coeffs.size() != num_vars_)
        throw DimensionMismatchError("lp: row length does not match variable count");
    rows_.push_back({std::move(coeffs), sense, std::move(rhs)});
}

void Problem::maximize(QVector objective)
{
    if (objective.size() != num_vars_)
        throw DimensionMismatchError("lp: objective length does not match variable count");
    objective_ = std::move(objective);
    minimize_ = false;
}

void Problem::minimize(QVector objective)
{
    maximize(negated(std::move(objective)));
    minimize_ = true;
}

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

/** Dense tableau. Row r reads: sum_j t[r][j] x_j = rhs[r], basis[r] basic. */
class Tableau
{
    public:
        std::vector<QVector> t;
        QVector rhs;
        std::vector<std::size_t> basis;
        QVector reduced;            // reduced costs for the current objective
        Rational value = 0;         // current objective value
        std::vector<bool> banned;   // columns that may never enter

        std::size_t cols() const { return banned.size(); }

        void set_objective(const QVector& c)
        {
            reduced = c;
            value = 0;
            for (std::size_t r = 0; r < t.size(); ++r)
            {
                const Rational& cb = c[basis[r]];
                if (cb == 0)
                    continue;
                for (std::size_t j = 0; j < cols(); ++j)
                    if (t[r][j] != 0)
                        reduced[j] -= cb * t[r][j];
                value += cb * rhs[r];
            }
        }

        void pivot(std::size_t r, std::size_t col)
        {
            Rational inv = 1 / t[r][col];
            for (auto& a : t[r])
                if (a != 0)
                    a *= inv;
            rhs[r] *= inv;
            for (std::size_t i = 0; i < t.size(); ++i)
            {
                if (i == r || t[i][col] == 0)
                    continue;
                Rational f = t[i][col];
                for (std::size_t j = 0; j < cols(); ++j)
                    if (t[r][j] != 0)
                        t[i][j] -= f * t[r][j];
                rhs[i] -= f * rhs[r];
            }
            if (reduced[col] != 0)
            {
                Rational f = reduced[col];
                for (std::size_t j = 0; j < cols(); ++j)
                    if (t[r][j] != 0)
                        reduced[j] -= f * t[r][j];
                value += f * rhs[r];
            }
            basis[r] = col;
        }

        /** Maximize the current objective. Returns false when unbounded. */
        bool optimize()
        {
            for (;;)
            {
                std::size_t enter = npos;
                for (std::size_t j = 0; j < cols(); ++j)
                    if (!banned[j] && reduced[j] > 0)
                    {
                        enter = j;
                        break;
                    }
                if (enter == npos)
                    return true;
                std::size_t leave = npos;
                Rational best_ratio;
                for (std::size_t r = 0; r < t.size(); ++r)
                {
                    if (t[r][enter] <= 0)
                        continue;
                    Rational ratio = rhs[r] / t[r][enter];
                    if (leave == npos || ratio < best_ratio
                        || (ratio == best_ratio && basis[r] < basis[leave]))
                    {
                        leave = r;
                        best_ratio = ratio;
                    }
                }
                if (leave == npos)
                    return false;
                pivot(leave, enter);
            }
        }

        void drop_row(std::size_t r)
        {
            t.erase(t.begin() + static_cast<std::ptrdiff_t>(r));
            rhs.erase(rhs.begin() + static_cast<std::ptrdiff_t>(r));
            basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(r));
        }
};

}   // namespace

Solution Problem::solve() const
{
    // Column layout: structural (free variables split in two), then one slack
    // or surplus per inequality row, then one artificial per row that needs it.
    std::vector<std::size_t> pos_col(num_vars_), neg_col(num_vars_, npos);
    std::size_t ncols = 0;
    for (std::size_t v = 0; v < num_vars_; ++v)
    {
        pos_col[v] = ncols++;
        if (free_[v])
            neg_col[v] = ncols++;
    }
    const std::size_t structural = ncols;

    const std::size_t m = rows_.size();
    std::vector<std::size_t> slack_col(m, npos), art_col(m, npos);
    std::vector<int> sign(m, 1);
    for (std::size_t r = 0; r < m; ++r)
    {
        sign[r] = rows_[r].rhs < 0 ? -1 : 1;
        if (rows_[r].sense != Sense::Equal)
            slack_col[r] = ncols++;
    }
    const std::size_t first_art = ncols;
    for (std::size_t r = 0; r < m; ++r)
    {
        Sense s = rows_[r].sense;
        // After multiplying by sign, a <= row keeps a +1 slack that can start basic.
        bool slack_basic = (s == Sense::LessEqual && sign[r] > 0)
                           || (s == Sense::GreaterEqual && sign[r] < 0);
        if (!slack_basic)
            art_col[r] = ncols++;
    }

    Tableau tab;
    tab.t.assign(m, QVector(ncols, Rational(0)));
    tab.rhs.assign(m, Rational(0));
    tab.basis.assign(m, npos);
    tab.banned.assign(ncols, false);
    for (std::size_t r = 0; r < m; ++r)
    {
        const Row& row = rows_[r];
        Rational sg = sign[r];
        for (std::size_t v = 0; v < num_vars_; ++v)
        {
            if (row.coeffs[v] == 0)
                continue;
            Rational a = sg * row.coeffs[v];
            tab.t[r][pos_col[v]] = a;
            if (neg_col[v] != npos)
                tab.t[r][neg_col[v]] = -a;
        }
        if (slack_col[r] != npos)
            tab.t[r][slack_col[r]] = (row.sense == Sense::LessEqual ? sg : -sg);
        tab.rhs[r] = sg * row.rhs;
        if (art_col[r] != npos)
        {
            tab.t[r][art_col[r]] = 1;
            tab.basis[r] = art_col[r];
        }
        else
        {
            tab.basis[r] = slack_col[r];
        }
    }

    // Phase 1: maximize -(sum of artificials).
    if (ncols > first_art)
    {
        QVector c1(ncols, Rational(0));
        for (std::size_t j = first_art; j < ncols; ++j)
            c1[j] = -1;
        tab.set_objective(c1);
        tab.optimize();
        if (tab.value < 0)
            return Solution{Status::Infeasible, 0, {}};
        // Drive remaining (zero-valued) artificials out of the basis.
        for (std::size_t r = 0; r < tab.t.size();)
        {
            if (tab.basis[r] < first_art)
            {
                ++r;
                continue;
            }
            std::size_t col = npos;
            for (std::size_t j = 0; j < first_art; ++j)
                if (tab.t[r][j] != 0)
                {
                    col = j;
                    break;
                }
            if (col == npos)
            {
                tab.drop_row(r);
                continue;
            }
            tab.pivot(r, col);
            ++r;
        }
        for (std::size_t j = first_art; j < ncols; ++j)
            tab.banned[j] = true;
    }

    // Phase 2.
    QVector c2(ncols, Rational(0));
    for (std::size_t v = 0; v < num_vars_; ++v)
    {
        c2[pos_col[v]] = objective_[v];
        if (neg_col[v] != npos)
            c2[neg_col[v]] = -objective_[v];
    }
    tab.set_objective(c2);
    if (!tab.optimize())
        return Solution{Status::Unbounded, 0, {}};

    QVector col_value(structural, Rational(0));
    for (std::size_t r = 0; r < tab.t.size(); ++r)
        if (tab.basis[r] < structural)
            col_value[tab.basis[r]] = tab.rhs[r];
    Solution sol;
    sol.status = Status::Optimal;
    sol.x.assign(num_vars_, Rational(0));
    for (std::size_t v = 0; v < num_vars_; ++v)
    {
        sol.x[v] = col_value[pos_col[v]];
        if (neg_col[v] != npos)
            sol.x[v] -= col_value[neg_col[v]];
    }
    sol.objective = minimize_ ? Rational(-tab.value) : tab.value;
    return sol;
}

Solution lexicographic_minimum(const Problem& problem, std::size_t leading_vars)
{
    if (leading_vars > problem.num_vars())
        throw DimensionMismatchError("lexicographic_minimum: too many leading variables");
    Problem work = problem;
    Solution last;
    for (std::size_t k = 0; k < leading_vars; ++k)
    {
        QVector obj(problem.num_vars(), Rational(0));
        obj[k] = 1;
        work.minimize(obj);
        last = work.solve();
        if (!last.optimal())
            return last;
        QVector fix(problem.num_vars(), Rational(0));
        fix[k] = 1;
        work.add_row(fix, Sense::Equal, last.x[k]);
    }
    if (leading_vars == 0)
    {
        work.maximize(QVector(problem.num_vars(), Rational(0)));
        last = work.solve();
    }
    return last;
}

}   // namespace coprox::lp
