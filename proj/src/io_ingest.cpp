#include "kgen/io_ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <utility>

#include "kgen/errors.hpp"

namespace kgen {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    cells.push_back(trim(cur));
    return cells;
}

double parse_number(const std::string& cell, const std::string& origin, std::size_t line_no,
                    const std::string& col) {
    const std::string t = trim(cell);
    if (t.empty())
        throw InputError(origin + ": line " + std::to_string(line_no) + ", column '" + col +
                         "': empty cell");
    const char* begin = t.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + t.size() || !std::isfinite(v))
        throw InputError(origin + ": line " + std::to_string(line_no) + ", column '" + col +
                         "': cannot parse '" + t + "' as a number");
    return v;
}

}  // namespace

std::vector<RawRecord> load_csv(std::istream& in, const CsvSchema& schema,
                                const std::string& origin) {
    std::string line;
    if (!std::getline(in, line)) throw InputError(origin + ": empty file");
    const std::vector<std::string> header = split_csv_line(line);

    auto find_col = [&](const std::string& name) -> std::ptrdiff_t {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<std::ptrdiff_t>(i);
        return -1;
    };

    const std::string income_name = schema.income_col.empty() ? "income" : schema.income_col;
    const std::ptrdiff_t ci = find_col(income_name);
    if (ci < 0) throw InputError(origin + ": income column '" + income_name + "' not found in header");
    std::ptrdiff_t cw = -1;
    if (!schema.weight_col.empty()) {
        cw = find_col(schema.weight_col);
        if (cw < 0)
            throw InputError(origin + ": weight column '" + schema.weight_col + "' not found in header");
    }
    std::ptrdiff_t cs = -1;
    if (!schema.size_col.empty()) {
        cs = find_col(schema.size_col);
        if (cs < 0)
            throw InputError(origin + ": size column '" + schema.size_col + "' not found in header");
    }

    std::vector<RawRecord> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const std::vector<std::string> cells = split_csv_line(line);
        auto cell_at = [&](std::ptrdiff_t idx, const std::string& col) -> const std::string& {
            if (idx >= static_cast<std::ptrdiff_t>(cells.size()))
                throw InputError(origin + ": line " + std::to_string(line_no) + ": too few cells (column '" +
                                 col + "' missing)");
            return cells[static_cast<std::size_t>(idx)];
        };
        RawRecord rec;
        rec.income = parse_number(cell_at(ci, income_name), origin, line_no, income_name);
        if (cw >= 0) {
            rec.weight = parse_number(cell_at(cw, schema.weight_col), origin, line_no, schema.weight_col);
            if (!(rec.weight > 0.0))
                throw InputError(origin + ": line " + std::to_string(line_no) + ", column '" +
                                 schema.weight_col + "': weight must be positive");
        }
        if (cs >= 0) {
            const double sz = parse_number(cell_at(cs, schema.size_col), origin, line_no, schema.size_col);
            if (!(sz >= 1.0) || sz != std::floor(sz))
                throw InputError(origin + ": line " + std::to_string(line_no) + ", column '" +
                                 schema.size_col + "': household size must be a positive integer");
            rec.household_size = static_cast<int>(sz);
        }
        out.push_back(rec);
    }
    return out;
}

std::vector<RawRecord> load_csv(const std::string& path, const CsvSchema& schema) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file '" + path + "'");
    return load_csv(in, schema, path);
}

WeightedSample preprocess(const std::vector<RawRecord>& records, const PreprocessOptions& opts) {
    WeightedSample s;
    s.n_raw = records.size();

    std::vector<std::pair<double, double>> rows;  // (income, weight)
    rows.reserve(records.size());
    for (const RawRecord& r : records) {
        const double x = opts.equivalize ? r.income / std::sqrt(static_cast<double>(r.household_size))
                                         : r.income;
        if (x > 0.0) rows.emplace_back(x, r.weight);
    }
    s.n_kept = rows.size();
    if (rows.empty()) throw InputError("no records with positive income remain after preprocessing");

    // extended precision so the mean-1 invariant holds to 1e-12 even for
    // samples in the tens of millions of rows
    long double w_total = 0.0L;
    long double wx_total = 0.0L;
    for (const auto& [x, w] : rows) {
        w_total += w;
        wx_total += static_cast<long double>(w) * x;
    }
    const double mean = static_cast<double>(wx_total / w_total);
    s.raw_mean = mean;
    long double se2 = 0.0L;
    for (const auto& [x, w] : rows) {
        const long double d = static_cast<long double>(x) - mean;
        se2 += static_cast<long double>(w) * w * d * d;
    }
    s.raw_mean_se = static_cast<double>(std::sqrt(se2) / w_total);

    for (auto& [x, w] : rows) x /= mean;
    std::sort(rows.begin(), rows.end());

    s.incomes.resize(rows.size());
    s.weights.resize(rows.size());
    long double check = 0.0L;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        s.incomes[i] = rows[i].first;
        s.weights[i] = rows[i].second;
        check += static_cast<long double>(rows[i].second) * rows[i].first;
    }
    s.total_weight = static_cast<double>(w_total);

    if (std::fabs(static_cast<double>(check / w_total) - 1.0) > 1e-12)
        throw std::logic_error("preprocess: normalized weighted mean drifted from 1");
    return s;
}

WeightedSample sample_from_values(const std::vector<double>& incomes) {
    std::vector<RawRecord> recs;
    recs.reserve(incomes.size());
    for (double x : incomes) recs.push_back({x, 1.0, 1});
    return preprocess(recs, {});
}

}  // namespace kgen
