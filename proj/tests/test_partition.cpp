#include "mfxpf/binomial.hpp"
#include "mfxpf/errors.hpp"
#include "mfxpf/partition.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace mfxpf;

namespace {

ScaleSet scales_of(std::initializer_list<std::size_t> s)
{
    ScaleSet set;
    set.scales = s;
    return set;
}

// brute-force ln chi = ln sum_t bx^(p/2) by^(q/2)
double brute_log_chi(const std::vector<double>& bx, const std::vector<double>& by,
                     double p, double q)
{
    double total = 0.0;
    for (std::size_t t = 0; t < bx.size(); ++t)
        if (bx[t] > 0.0 && by[t] > 0.0)
            total += std::pow(bx[t], 0.5 * p) * std::pow(by[t], 0.5 * q);
    return std::log(total);
}

} // namespace

TEST_CASE("box integration with leading truncation")
{
    // length 10 at scale 4 keeps the first 8 cells as two boxes
    std::vector<double> vals(10, 0.1);
    const Measure m{vals};
    const BoxSums boxes = integrate_boxes(m, m, scales_of({4}));
    REQUIRE(boxes.x[0].size() == 2);
    CHECK(boxes.x[0][0] == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(boxes.x[0][1] == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("partition values match brute force on a cascade pair")
{
    const Measure mx = gen_binomial({0.3, 10});
    const Measure my = gen_binomial({0.4, 10});
    const ScaleSet scales = ScaleSet::dyadic(mx.length());
    const BoxSums boxes = integrate_boxes(mx, my, scales);
    const MomentGrid grid = MomentGrid::symmetric(6.0, 1.0);
    const PartitionTable table = joint_partition(boxes, grid);

    for (std::size_t si = 0; si < table.scales.size(); ++si)
        for (std::size_t pi = 0; pi < grid.np(); pi += 3)
            for (std::size_t qi = 0; qi < grid.nq(); qi += 3) {
                const double expected = brute_log_chi(boxes.x[si], boxes.y[si],
                                                      grid.p_values[pi], grid.q_values[qi]);
                CHECK(table.log_chi_at(si, pi, qi) ==
                      doctest::Approx(expected).epsilon(1e-12));
            }
}

TEST_CASE("chi at zero orders counts the boxes")
{
    const Measure m = gen_binomial({0.35, 8});
    const BoxSums boxes = integrate_boxes(m, m, scales_of({4, 16}));
    const MomentGrid grid = MomentGrid::symmetric(2.0, 1.0);
    const PartitionTable table = joint_partition(boxes, grid);
    const std::size_t pz = grid.p_zero_index(), qz = grid.q_zero_index();
    CHECK(table.chi_at(0, pz, qz) == doctest::Approx(64.0).epsilon(1e-13));
    CHECK(table.chi_at(1, pz, qz) == doctest::Approx(16.0).epsilon(1e-13));
}

TEST_CASE("swapping the pair transposes the table")
{
    const Measure mx = gen_binomial({0.3, 8});
    const Measure my = gen_binomial({0.4, 8});
    const MomentGrid grid = MomentGrid::symmetric(4.0, 0.5);
    const PartitionTable ab =
        joint_partition(integrate_boxes(mx, my, scales_of({4, 8, 16})), grid);
    const PartitionTable ba =
        joint_partition(integrate_boxes(my, mx, scales_of({4, 8, 16})), grid);
    for (std::size_t si = 0; si < 3; ++si)
        for (std::size_t pi = 0; pi < grid.np(); ++pi)
            for (std::size_t qi = 0; qi < grid.nq(); ++qi)
                CHECK(ab.log_chi_at(si, pi, qi) ==
                      doctest::Approx(ba.log_chi_at(si, qi, pi)).epsilon(1e-13));
}

TEST_CASE("log chi is midpoint convex on the grid")
{
    const Measure mx = gen_binomial({0.3, 10});
    const Measure my = gen_binomial({0.45, 10});
    const MomentGrid grid = MomentGrid::symmetric(5.0, 0.5);
    const PartitionTable table =
        joint_partition(integrate_boxes(mx, my, ScaleSet::dyadic(1024)), grid);
    for (std::size_t si = 0; si < table.scales.size(); ++si)
        for (std::size_t pi = 1; pi + 1 < grid.np(); ++pi)
            for (std::size_t qi = 1; qi + 1 < grid.nq(); ++qi) {
                const double mid = table.log_chi_at(si, pi, qi);
                const double avg_p = 0.5 * (table.log_chi_at(si, pi - 1, qi) +
                                            table.log_chi_at(si, pi + 1, qi));
                const double avg_q = 0.5 * (table.log_chi_at(si, pi, qi - 1) +
                                            table.log_chi_at(si, pi, qi + 1));
                CHECK(mid <= avg_p + 1e-12);
                CHECK(mid <= avg_q + 1e-12);
            }
}

TEST_CASE("uni-order diagonal is bit-identical to the joint table")
{
    const Measure mx = gen_binomial({0.3, 10});
    const Measure my = gen_binomial({0.4, 10});
    const BoxSums boxes = integrate_boxes(mx, my, ScaleSet::dyadic(1024));
    const MomentGrid grid = MomentGrid::symmetric(8.0, 0.5);
    const PartitionTable table = joint_partition(boxes, grid);
    const UniMomentSums uni = uni_moment_sums(boxes, grid.q_values);
    for (std::size_t si = 0; si < table.scales.size(); ++si)
        for (std::size_t qi = 0; qi < grid.nq(); ++qi)
            CHECK(uni.log_chi[uni.cell(si, qi)] == table.log_chi_at(si, qi, qi));
}

TEST_CASE("canonical measures")
{
    const Measure mx = gen_binomial({0.3, 2});
    const Measure my = gen_binomial({0.4, 2});
    const BoxSums boxes = integrate_boxes(mx, my, scales_of({1}));
    const auto mu = canonical_measures(boxes, 2.0, 2.0, 1);
    REQUIRE(mu.size() == 4);
    // weights m_x m_y / chi with chi = 0.2916
    CHECK(mu[0] == doctest::Approx(0.04938271604938271).epsilon(1e-14));
    CHECK(mu[1] == doctest::Approx(0.1728395061728395).epsilon(1e-14));
    CHECK(mu[2] == doctest::Approx(0.1728395061728395).epsilon(1e-14));
    CHECK(mu[3] == doctest::Approx(0.6049382716049383).epsilon(1e-14));
    CHECK(std::accumulate(mu.begin(), mu.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("canonical measures sum to one at every grid corner")
{
    const Measure mx = gen_binomial({0.3, 8});
    const Measure my = gen_binomial({0.4, 8});
    const BoxSums boxes = integrate_boxes(mx, my, scales_of({4}));
    for (double p : {-10.0, 0.0, 10.0})
        for (double q : {-10.0, 0.0, 10.0}) {
            const auto mu = canonical_measures(boxes, p, q, 4);
            CHECK(std::accumulate(mu.begin(), mu.end(), 0.0) ==
                  doctest::Approx(1.0).epsilon(1e-12));
        }
}

TEST_CASE("mu-weighted log sums match direct evaluation")
{
    const Measure mx = gen_binomial({0.3, 8});
    const Measure my = gen_binomial({0.4, 8});
    const BoxSums boxes = integrate_boxes(mx, my, scales_of({4, 8, 16}));
    const MomentGrid grid = MomentGrid::symmetric(3.0, 1.0);
    const MomentSums sums = moment_sums(boxes, grid);

    for (std::size_t si = 0; si < 3; ++si)
        for (std::size_t pi = 0; pi < grid.np(); ++pi)
            for (std::size_t qi = 0; qi < grid.nq(); ++qi) {
                const auto mu = canonical_measures(boxes, grid.p_values[pi],
                                                   grid.q_values[qi], boxes.scales[si]);
                double sx = 0.0, sy = 0.0;
                for (std::size_t t = 0; t < mu.size(); ++t) {
                    if (mu[t] > 0.0) {
                        sx += mu[t] * std::log(boxes.x[si][t]);
                        sy += mu[t] * std::log(boxes.y[si][t]);
                    }
                }
                const std::size_t c = sums.table.cell(si, pi, qi);
                CHECK(sums.mu_log_mx[c] == doctest::Approx(sx).epsilon(1e-11));
                CHECK(sums.mu_log_my[c] == doctest::Approx(sy).epsilon(1e-11));
            }
}

TEST_CASE("zero boxes are excluded and bounded")
{
    // a pair with one empty box out of four at scale 1 (25% zeros)
    Measure mx{{0.0, 0.4, 0.3, 0.3}};
    Measure my{{0.25, 0.25, 0.25, 0.25}};
    const BoxSums boxes = integrate_boxes(mx, my, scales_of({1}));
    const MomentGrid grid = MomentGrid::symmetric(2.0, 1.0);
    CHECK_THROWS_AS(joint_partition(boxes, grid), DataError);
    // generous threshold lets the analysis continue, excluding the box
    const PartitionTable table = joint_partition(boxes, grid, 0.5);
    CHECK(table.zero_box_count[0] == 1);
    CHECK(table.retained_boxes[0] == 3);
    CHECK(table.chi_at(0, grid.p_zero_index(), grid.q_zero_index()) ==
          doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("all boxes zero aborts with the scale named")
{
    Measure mx{{0.0, 0.0, 0.5, 0.5}};
    Measure my{{0.5, 0.5, 0.0, 0.0}};
    const BoxSums boxes = integrate_boxes(mx, my, scales_of({2}));
    CHECK_THROWS_WITH_AS(joint_partition(boxes, MomentGrid::symmetric(1.0, 1.0), 1.0),
                         doctest::Contains("scale 2"), DataError);
}
