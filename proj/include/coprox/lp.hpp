/**
 * Exact rational linear programming.
 *
 * Dense two-phase primal simplex over Q with Bland's rule, so every run on the
 * same problem performs the same pivots and returns the same basic solution.
 * Problem sizes in this library are tiny (tens of rows, a few hundred
 * columns), which is what the dense tableau is sized for.
 */

#ifndef COPROX_LP_HPP
#define COPROX_LP_HPP

#include <cstddef>
#include <vector>

#include "coprox/rational.hpp"

namespace coprox::lp {

enum class Sense { LessEqual, Equal, GreaterEqual };

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution
{
    Status status = Status::Infeasible;
    Rational objective = 0;
    QVector x;          // one entry per declared variable; empty unless Optimal

    bool optimal() const { return status == Status::Optimal; }
};

class Problem
{
    public:
        /** All variables start nonnegative; call set_free() to lift the bound. */
        explicit Problem(std::size_t num_vars);

        std::size_t num_vars() const { return num_vars_; }
        std::size_t num_rows() const { return rows_.size(); }

        void set_free(std::size_t var);
        void set_all_free();

        void add_row(QVector coeffs, Sense sense, Rational rhs);

        void maximize(QVector objective);
        void minimize(QVector objective);

        Solution solve() const;

    private:
        struct Row
        {
            QVector coeffs;
            Sense sense;
            Rational rhs;
        };

        std::size_t num_vars_;
        std::vector<bool> free_;
        std::vector<Row> rows_;
        QVector objective_;     // always stored as a maximization objective
        bool minimize_ = false;
};

/**
 * Lexicographically smallest point of the feasible region (minimize x_0, then
 * x_1 with x_0 fixed, ...). The region must be bounded in every coordinate
 * that is minimized; returns an Infeasible/Unbounded status otherwise.
 */
Solution lexicographic_minimum(const Problem& problem, std::size_t leading_vars);

}   // namespace coprox::lp

#endif
