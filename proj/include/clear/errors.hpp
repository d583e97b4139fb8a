#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace clear {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// figure-of-merit construction
struct NonPositiveFactor : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct IncomparableValues : Error { using Error::Error; };
struct EmptyOptionSet : Error { using Error::Error; };

// parametric technology models
struct NonPositiveTemperature : Error { using Error::Error; };
struct InvalidParams : Error { using Error::Error; };
struct NegativeInput : Error { using Error::Error; };
struct NonPositiveLength : Error { using Error::Error; };

// historical datasets and trend fitting
struct MalformedHeader : Error { using Error::Error; };
struct MalformedRow : Error {
    MalformedRow(std::size_t row_number, std::string column_name, const std::string& detail)
        : Error("row " + std::to_string(row_number) + ", column '" + column_name + "': " + detail),
          row(row_number),
          column(std::move(column_name)) {}
    std::size_t row;     // 1-based line number in the source, header is line 1
    std::string column;
};
struct EmptyDataset : Error { using Error::Error; };
struct NoUsableRecords : Error { using Error::Error; };
struct InsufficientPoints : Error { using Error::Error; };
struct DegenerateYears : Error { using Error::Error; };

// break-even search
struct InvalidRange : Error { using Error::Error; };
struct NonPositiveEvaluation : Error { using Error::Error; };

// output sinks
struct EmptyData : Error { using Error::Error; };
struct SinkWriteError : Error { using Error::Error; };

}  // namespace clear
