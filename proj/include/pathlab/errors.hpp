#pragma once

#include <stdexcept>
#include <string>

namespace pathlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MalformedGraph6 : Error {
    MalformedGraph6(const std::string& what, std::size_t line)
        : Error("graph6 line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

struct SchemaError : Error {
    using Error::Error;
};

struct InvalidParams : Error {
    using Error::Error;
};

struct BudgetExceeded : Error {
    BudgetExceeded(std::size_t stored, std::size_t budget)
        : Error("path budget exceeded: stored " + std::to_string(stored) +
                " of allowed " + std::to_string(budget)),
          stored(stored), budget(budget) {}
    std::size_t stored;
    std::size_t budget;
};

struct ConfigMismatch : Error {
    using Error::Error;
};

struct ShapeMismatch : Error {
    using Error::Error;
};

struct SizeMismatch : Error {
    using Error::Error;
};

struct NonFinite : Error {
    using Error::Error;
};

struct GradCheckFailed : Error {
    GradCheckFailed(const std::string& param, std::size_t coord, double rel_err)
        : Error("gradient check failed at " + param + "[" + std::to_string(coord) +
                "], rel err " + std::to_string(rel_err)),
          param(param), coord(coord), rel_err(rel_err) {}
    std::string param;
    std::size_t coord;
    double rel_err;
};

}  // namespace pathlab
