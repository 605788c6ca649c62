#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace kgen {

/// One survey record as read from disk, before any preprocessing.
struct RawRecord {
    double income = 0.0;
    double weight = 1.0;
    int household_size = 1;
};

/// Column-name mapping for CSV input. Empty weight/size names mean the column
/// is absent and every record takes the default (weight 1, size 1).
struct CsvSchema {
    std::string income_col = "income";
    std::string weight_col;
    std::string size_col;
};

struct PreprocessOptions {
    bool equivalize = true;  ///< divide income by sqrt(household_size)
};

/// Analysis-ready sample: equivalized, filtered to positive incomes,
/// normalized to weighted mean 1, and sorted ascending.
struct WeightedSample {
    std::vector<double> incomes;  ///< ascending, weighted mean exactly 1
    std::vector<double> weights;  ///< positive, aligned with incomes
    double raw_mean = 0.0;        ///< weighted mean before normalization
    double raw_mean_se = 0.0;     ///< standard error of raw_mean
    double total_weight = 0.0;
    std::size_t n_raw = 0;   ///< records read
    std::size_t n_kept = 0;  ///< records surviving the positivity filter
};

/// Parse a CSV file (header row, comma-delimited). Errors name the offending
/// row and column. Non-positive incomes are kept; preprocess() filters them.
std::vector<RawRecord> load_csv(const std::string& path, const CsvSchema& schema = {});

/// Same parser on an already-open stream; `origin` labels error messages.
std::vector<RawRecord> load_csv(std::istream& in, const CsvSchema& schema = {},
                                const std::string& origin = "<stream>");

/// Equivalize, filter, normalize to weighted mean 1, and sort.
WeightedSample preprocess(const std::vector<RawRecord>& records,
                          const PreprocessOptions& opts = {});

/// Convenience: unit-weight sample from bare income values.
WeightedSample sample_from_values(const std::vector<double>& incomes);

}  // namespace kgen
