#include "mfxpf/io.hpp"

#include "mfxpf/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

namespace mfxpf {

namespace {

std::string trim(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos)
        return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::string fmt_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool parse_double(const std::string& text, double& out)
{
    try {
        std::size_t pos = 0;
        out = std::stod(text, &pos);
        return pos == text.size();
    } catch (const std::exception&) {
        return false;
    }
}

std::ofstream open_out(const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot write " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot read " + path.string());
    return in;
}

} // namespace

std::chrono::year_month_day parse_date(const std::string& text)
{
    int y = 0, m = 0, d = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%d-%d-%d%c", &y, &m, &d, &tail) != 3)
        throw DataError("invalid ISO-8601 date: '" + text + "'");
    const std::chrono::year_month_day date{std::chrono::year{y},
                                           std::chrono::month{static_cast<unsigned>(m)},
                                           std::chrono::day{static_cast<unsigned>(d)}};
    if (!date.ok())
        throw DataError("invalid calendar date: '" + text + "'");
    return date;
}

std::string format_date(const std::chrono::year_month_day& date)
{
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
    return buf;
}

PriceSeries read_price_csv(const std::filesystem::path& path)
{
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line))
        throw DataError(path.string() + ": empty file");
    {
        std::string header = trim(line);
        for (char& c : header)
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (header.rfind("date,", 0) != 0)
            throw DataError(path.string() + ": missing 'date,close' header row");
    }

    PriceSeries series;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        const std::string trimmed = trim(line);
        if (trimmed.empty())
            continue;
        const auto comma = trimmed.find(',');
        if (comma == std::string::npos)
            throw DataError(path.string() + " row " + std::to_string(row) +
                            ": expected 'date,close'");
        double close = 0.0;
        if (!parse_double(trim(trimmed.substr(comma + 1)), close))
            throw DataError(path.string() + " row " + std::to_string(row) +
                            ": unparsable close value");
        std::chrono::year_month_day date{};
        try {
            date = parse_date(trim(trimmed.substr(0, comma)));
        } catch (const DataError& e) {
            throw DataError(path.string() + " row " + std::to_string(row) + ": " + e.what());
        }
        if (!(close > 0.0))
            throw DataError(path.string() + " row " + std::to_string(row) +
                            ": nonpositive close");
        series.dates.push_back(date);
        series.closes.push_back(close);
    }
    series.validate();
    return series;
}

std::vector<double> read_value_csv(const std::filesystem::path& path)
{
    auto in = open_in(path);
    std::vector<double> values;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        const std::string trimmed = trim(line);
        if (trimmed.empty())
            continue;
        double v = 0.0;
        if (!parse_double(trimmed, v)) {
            if (row == 1)
                continue;  // header line
            throw DataError(path.string() + " row " + std::to_string(row) +
                            ": unparsable value");
        }
        values.push_back(v);
    }
    if (values.empty())
        throw DataError(path.string() + ": no values");
    return values;
}

void write_value_csv(const std::filesystem::path& path, const std::vector<double>& values)
{
    auto out = open_out(path);
    out << "value\n";
    for (double v : values)
        out << fmt_double(v) << '\n';
}

void write_partition_csv(const std::filesystem::path& path, const PartitionTable& table)
{
    auto out = open_out(path);
    out << "p,q,s,chi,zero_boxes\n";
    for (std::size_t si = 0; si < table.scales.size(); ++si)
        for (std::size_t pi = 0; pi < table.grid.np(); ++pi)
            for (std::size_t qi = 0; qi < table.grid.nq(); ++qi)
                out << fmt_double(table.grid.p_values[pi]) << ','
                    << fmt_double(table.grid.q_values[qi]) << ',' << table.scales[si] << ','
                    << fmt_double(table.chi_at(si, pi, qi)) << ','
                    << table.zero_box_count[si] << '\n';
}

void write_matrix_csv(const std::filesystem::path& path, const MomentGrid& grid,
                      const std::vector<double>& values)
{
    if (values.size() != grid.cells())
        throw ParameterError("surface size does not match grid");
    auto out = open_out(path);
    out << "p\\q";
    for (double q : grid.q_values)
        out << ',' << fmt_double(q);
    out << '\n';
    for (std::size_t pi = 0; pi < grid.np(); ++pi) {
        out << fmt_double(grid.p_values[pi]);
        for (std::size_t qi = 0; qi < grid.nq(); ++qi)
            out << ',' << fmt_double(values[grid.index(pi, qi)]);
        out << '\n';
    }
}

std::pair<MomentGrid, std::vector<double>> read_matrix_csv(const std::filesystem::path& path)
{
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line))
        throw DataError(path.string() + ": empty file");

    MomentGrid grid;
    {
        std::stringstream header(trim(line));
        std::string field;
        std::getline(header, field, ',');  // "p\q" corner
        while (std::getline(header, field, ',')) {
            double q = 0.0;
            if (!parse_double(field, q))
                throw DataError(path.string() + ": bad q header value '" + field + "'");
            grid.q_values.push_back(q);
        }
    }

    std::vector<double> values;
    while (std::getline(in, line)) {
        const std::string trimmed = trim(line);
        if (trimmed.empty())
            continue;
        std::stringstream row(trimmed);
        std::string field;
        std::getline(row, field, ',');
        double p = 0.0;
        if (!parse_double(field, p))
            throw DataError(path.string() + ": bad p value '" + field + "'");
        grid.p_values.push_back(p);
        std::size_t count = 0;
        while (std::getline(row, field, ',')) {
            double v = std::numeric_limits<double>::quiet_NaN();
            parse_double(field, v);  // non-numeric cells (nan) stay NaN
            values.push_back(v);
            ++count;
        }
        if (count != grid.q_values.size())
            throw DataError(path.string() + ": ragged matrix row");
    }
    if (grid.p_values.size() >= 2)
        grid.spacing = grid.p_values[1] - grid.p_values[0];
    return {std::move(grid), std::move(values)};
}

void write_spectrum_csv(const std::filesystem::path& path, const JointSpectrum& spectrum)
{
    auto out = open_out(path);
    out << "p,q,alpha_x,alpha_y,f\n";
    for (const SpectrumPoint& pt : spectrum.points)
        out << fmt_double(pt.p) << ',' << fmt_double(pt.q) << ',' << fmt_double(pt.alpha_x)
            << ',' << fmt_double(pt.alpha_y) << ',' << fmt_double(pt.f) << '\n';
}

nlohmann::json partition_to_json(const PartitionTable& table)
{
    nlohmann::json j;
    j["grid"]["p_values"] = table.grid.p_values;
    j["grid"]["q_values"] = table.grid.q_values;
    j["grid"]["spacing"] = table.grid.spacing;
    j["scales"] = table.scales;
    j["log_chi"] = table.log_chi;
    j["zero_box_count"] = table.zero_box_count;
    j["retained_boxes"] = table.retained_boxes;
    return j;
}

PartitionTable partition_from_json(const nlohmann::json& j)
{
    PartitionTable table;
    table.grid.p_values = j.at("grid").at("p_values").get<std::vector<double>>();
    table.grid.q_values = j.at("grid").at("q_values").get<std::vector<double>>();
    table.grid.spacing = j.at("grid").at("spacing").get<double>();
    table.scales = j.at("scales").get<std::vector<std::size_t>>();
    table.log_chi = j.at("log_chi").get<std::vector<double>>();
    table.zero_box_count = j.at("zero_box_count").get<std::vector<std::size_t>>();
    table.retained_boxes = j.at("retained_boxes").get<std::vector<std::size_t>>();
    if (table.log_chi.size() != table.scales.size() * table.grid.cells())
        throw DataError("partition JSON: log_chi size does not match grid and scales");
    return table;
}

void write_partition_json(const std::filesystem::path& path, const PartitionTable& table)
{
    auto out = open_out(path);
    out << partition_to_json(table).dump(2) << '\n';
}

PartitionTable read_partition_json(const std::filesystem::path& path)
{
    auto in = open_in(path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
    return partition_from_json(j);
}

} // namespace mfxpf
