#include "mfxpf/binomial.hpp"
#include "mfxpf/errors.hpp"
#include "mfxpf/io.hpp"
#include "mfxpf/partition.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

using namespace mfxpf;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir()
    {
        path = std::filesystem::temp_directory_path() /
               ("mfxpf_io_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

void write_file(const std::filesystem::path& p, const std::string& text)
{
    std::ofstream out(p);
    out << text;
}

} // namespace

TEST_CASE("date parsing")
{
    const auto d = parse_date("1999-12-31");
    CHECK(format_date(d) == "1999-12-31");
    CHECK_THROWS_AS(parse_date("1999/12/31"), DataError);
    CHECK_THROWS_AS(parse_date("1999-02-30"), DataError);
    CHECK_THROWS_AS(parse_date("notadate"), DataError);
}

TEST_CASE("price CSV round trip and row errors")
{
    TempDir tmp;
    const auto good = tmp.path / "good.csv";
    write_file(good, "date,close\n2020-01-01,100.5\n2020-01-02,101\n");
    const PriceSeries series = read_price_csv(good);
    REQUIRE(series.size() == 2);
    CHECK(series.closes[0] == 100.5);
    CHECK(format_date(series.dates[1]) == "2020-01-02");

    const auto no_header = tmp.path / "nh.csv";
    write_file(no_header, "2020-01-01,100.5\n");
    CHECK_THROWS_AS(read_price_csv(no_header), DataError);

    const auto bad_close = tmp.path / "bc.csv";
    write_file(bad_close, "date,close\n2020-01-01,100\n2020-01-02,oops\n");
    try {
        read_price_csv(bad_close);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    }

    const auto neg_close = tmp.path / "nc.csv";
    write_file(neg_close, "date,close\n2020-01-01,100\n2020-01-02,-5\n");
    CHECK_THROWS_AS(read_price_csv(neg_close), DataError);
}

TEST_CASE("value CSV round trip")
{
    TempDir tmp;
    const auto path = tmp.path / "values.csv";
    const std::vector<double> values{0.1, 0.2, 0.30000000000000004, 0.4};
    write_value_csv(path, values);
    CHECK(read_value_csv(path) == values);
}

TEST_CASE("matrix CSV round trip preserves the grid")
{
    TempDir tmp;
    const MomentGrid grid = MomentGrid::symmetric(2.0, 0.5);
    std::vector<double> surface(grid.cells());
    for (std::size_t c = 0; c < surface.size(); ++c)
        surface[c] = 0.123456789012345 * static_cast<double>(c) - 3.0;
    const auto path = tmp.path / "surf.csv";
    write_matrix_csv(path, grid, surface);
    const auto [grid2, surface2] = read_matrix_csv(path);
    CHECK(grid2.p_values == grid.p_values);
    CHECK(grid2.q_values == grid.q_values);
    CHECK(surface2 == surface);
}

TEST_CASE("partition JSON round trip is bit exact")
{
    const Measure mx = gen_binomial({0.3, 8});
    const Measure my = gen_binomial({0.4, 8});
    ScaleSet scales;
    scales.scales = {4, 8, 16, 32};
    const PartitionTable table =
        joint_partition(integrate_boxes(mx, my, scales), MomentGrid::symmetric(4.0, 0.5));

    TempDir tmp;
    const auto path = tmp.path / "chi.json";
    write_partition_json(path, table);
    const PartitionTable back = read_partition_json(path);
    CHECK(back.log_chi == table.log_chi);
    CHECK(back.scales == table.scales);
    CHECK(back.grid.p_values == table.grid.p_values);
    CHECK(back.zero_box_count == table.zero_box_count);
    CHECK(back.retained_boxes == table.retained_boxes);
}

TEST_CASE("malformed partition JSON is a data error")
{
    TempDir tmp;
    const auto path = tmp.path / "bad.json";
    write_file(path, "{ not json");
    CHECK_THROWS_AS(read_partition_json(path), DataError);
    CHECK_THROWS_AS(read_partition_json(tmp.path / "missing.json"), DataError);
}
