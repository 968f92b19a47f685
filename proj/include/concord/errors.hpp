#pragma once

#include <stdexcept>
#include <string>

namespace concord {

// Problems with the input data itself: unreadable files, malformed cells,
// responses that are not 0/1 where they must be, empty groups.
class DataError : public std::runtime_error {
public:
    DataError(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class EmptyInput : public DataError {
public:
    explicit EmptyInput(const std::string& what = "no data rows")
        : DataError("EmptyInput", what) {}
};

class ParseError : public DataError {
public:
    ParseError(std::size_t row, std::size_t col, const std::string& what)
        : DataError("ParseError",
                    "row " + std::to_string(row) + ", col " + std::to_string(col) + ": " + what),
          row_(row), col_(col) {}
    std::size_t row() const noexcept { return row_; }  // 1-based physical line
    std::size_t col() const noexcept { return col_; }  // 1-based column

private:
    std::size_t row_;
    std::size_t col_;
};

class NonBinaryResponse : public DataError {
public:
    explicit NonBinaryResponse(double value)
        : DataError("NonBinaryResponse",
                    "response must be exactly 0 or 1, got " + std::to_string(value)) {}
};

class EmptyGroup : public DataError {
public:
    explicit EmptyGroup(const std::string& which)
        : DataError("EmptyGroup", "group " + which + " has no observations") {}
};

class IoError : public DataError {
public:
    explicit IoError(const std::string& what) : DataError("IoError", what) {}
};

// The estimator cannot produce a value on this input. The CLI maps these to
// exit code 2 with the error name on stderr.
class EstimationError : public std::runtime_error {
public:
    EstimationError(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class AllTied : public EstimationError {
public:
    explicit AllTied(const std::string& what = "every comparable pair is tied in prediction")
        : EstimationError("AllTied", what) {}
};

class NoComparablePairs : public EstimationError {
public:
    explicit NoComparablePairs(const std::string& what = "no pair satisfies the comparability gap")
        : EstimationError("NoComparablePairs", what) {}
};

class NoComparableClusters : public EstimationError {
public:
    explicit NoComparableClusters(const std::string& what = "no cluster pair satisfies the comparability gap")
        : EstimationError("NoComparableClusters", what) {}
};

class NoComparableRegions : public EstimationError {
public:
    explicit NoComparableRegions(const std::string& what = "no region pair satisfies the comparability gap")
        : EstimationError("NoComparableRegions", what) {}
};

}  // namespace concord
