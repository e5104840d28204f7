#pragma once

#include <stdexcept>
#include <string>

namespace hessian {

// Error hierarchy. The three tag bases map onto CLI exit codes:
// input_error -> 2, budget_error -> 3, internal_error -> 4.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct internal_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CharacteristicTooSmall : input_error {
    explicit CharacteristicTooSmall(const std::string& m) : input_error("CharacteristicTooSmall: " + m) {}
};
struct NotPrime : input_error {
    explicit NotPrime(const std::string& m) : input_error("NotPrime: " + m) {}
};
struct NotCoprime : input_error {
    explicit NotCoprime(const std::string& m) : input_error("NotCoprime: " + m) {}
};
struct DegreeMismatch : input_error {
    explicit DegreeMismatch(const std::string& m) : input_error("DegreeMismatch: " + m) {}
};
struct LevelMismatch : input_error {
    explicit LevelMismatch(const std::string& m) : input_error("LevelMismatch: " + m) {}
};
struct BadResidue : input_error {
    explicit BadResidue(const std::string& m) : input_error("BadResidue: " + m) {}
};
struct NotInG : input_error {
    explicit NotInG(const std::string& m) : input_error("NotInG: " + m) {}
};
struct InfinityModelUnavailable : input_error {
    explicit InfinityModelUnavailable(const std::string& m) : input_error("InfinityModelUnavailable: " + m) {}
};

struct FieldTooLarge : budget_error {
    explicit FieldTooLarge(const std::string& m) : budget_error("FieldTooLarge: " + m) {}
};
struct BudgetExceeded : budget_error {
    explicit BudgetExceeded(const std::string& m) : budget_error("BudgetExceeded: " + m) {}
};

struct IntegralityFailure : internal_error {
    explicit IntegralityFailure(const std::string& m) : internal_error("IntegralityFailure: " + m) {}
};
struct FunctionalEquationFailure : internal_error {
    explicit FunctionalEquationFailure(const std::string& m) : internal_error("FunctionalEquationFailure: " + m) {}
};
struct RankMismatch : internal_error {
    explicit RankMismatch(const std::string& m) : internal_error("RankMismatch: " + m) {}
};
struct SpecialValueMismatch : internal_error {
    explicit SpecialValueMismatch(const std::string& m) : internal_error("SpecialValueMismatch: " + m) {}
};

}  // namespace hessian
