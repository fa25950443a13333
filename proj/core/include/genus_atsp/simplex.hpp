#ifndef GENUS_ATSP_SIMPLEX_HPP
#define GENUS_ATSP_SIMPLEX_HPP

#include <memory>
#include <utility>
#include <vector>

namespace genus_atsp {

// Standard-form LP: min c.y subject to A y = b, y >= 0.
struct LpColumn {
    std::vector<std::pair<int, double>> entries;  // (row, coefficient)
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpResult {
    LpStatus status = LpStatus::IterationLimit;
    std::vector<double> x;
    double objective = 0.0;
    int pivots = 0;
};

class LpBackend {
public:
    virtual ~LpBackend() = default;
    virtual LpResult solve(int rows, const std::vector<LpColumn>& columns,
                           const std::vector<double>& cost,
                           const std::vector<double>& rhs) = 0;
};

// Two-phase dense revised simplex. Bland's rule for entering and leaving
// variables makes every run deterministic; the basis inverse is kept densely
// and refactorized periodically. Built for desk-scale restricted LPs.
class DenseSimplex : public LpBackend {
public:
    explicit DenseSimplex(int pivot_limit = 200000) : pivot_limit_(pivot_limit) {}

    LpResult solve(int rows, const std::vector<LpColumn>& columns,
                   const std::vector<double>& cost,
                   const std::vector<double>& rhs) override;

private:
    int pivot_limit_;
};

std::unique_ptr<LpBackend> make_default_lp_backend();

}  // namespace genus_atsp

#endif
