#ifndef MONO_ERRORS_HPP
#define MONO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mono {

/// Base class of all library errors. kind() is a stable machine-readable tag
/// (it ends up in the CLI's error.kind field).
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

struct NonFiniteSample : Error {
  explicit NonFiniteSample(const std::string& what = "integrand returned a non-finite value")
      : Error("NonFiniteSample", what) {}
};

struct ToleranceNotMet : Error {
  explicit ToleranceNotMet(const std::string& what)
      : Error("ToleranceNotMet", what) {}
};

struct StepUnderflow : Error {
  explicit StepUnderflow(const std::string& what)
      : Error("StepUnderflow", what) {}
};

struct PoleTooClose : Error {
  PoleTooClose(int pole_index, double s)
      : Error("PoleTooClose",
              "path passes within the pole guard radius of pole #" +
                  std::to_string(pole_index) + " at parameter s=" + std::to_string(s)),
        pole(pole_index), parameter(s) {}
  int pole;
  double parameter;
};

struct NotClosed : Error {
  explicit NotClosed(const std::string& what = "operation requires a closed loop")
      : Error("NotClosed", what) {}
};

struct BasePointMismatch : Error {
  explicit BasePointMismatch(const std::string& what)
      : Error("BasePointMismatch", what) {}
};

struct RankMismatch : Error {
  explicit RankMismatch(const std::string& what)
      : Error("RankMismatch", what) {}
};

struct TruncationTooLarge : Error {
  explicit TruncationTooLarge(const std::string& what)
      : Error("TruncationTooLarge", what) {}
};

struct BadGenus : Error {
  explicit BadGenus(int g)
      : Error("BadGenus", "genus must be at least 2, got " + std::to_string(g)) {}
};

struct WrongGeneratorCount : Error {
  explicit WrongGeneratorCount(const std::string& what)
      : Error("WrongGeneratorCount", what) {}
};

struct ExplosionGuard : Error {
  explicit ExplosionGuard(const std::string& what)
      : Error("ExplosionGuard", what) {}
};

struct BranchPointOnPath : Error {
  explicit BranchPointOnPath(const std::string& what =
                                 "quadratic differential vanishes on the path")
      : Error("BranchPointOnPath", what) {}
};

struct RelationViolated : Error {
  RelationViolated(int relation_index, double res)
      : Error("RelationViolated",
              "images do not kill relation #" + std::to_string(relation_index) +
                  " (residual " + std::to_string(res) + ")"),
        relation(relation_index), residual(res) {}
  int relation;
  double residual;
};

struct CountMismatch : Error {
  explicit CountMismatch(const std::string& what)
      : Error("CountMismatch", what) {}
};

struct InvalidForm : Error {
  explicit InvalidForm(const std::string& what)
      : Error("InvalidForm", what) {}
};

struct InvalidRepresentation : Error {
  explicit InvalidRepresentation(const std::string& what)
      : Error("InvalidRepresentation", what) {}
};

struct InvalidRelationSet : Error {
  explicit InvalidRelationSet(const std::string& what)
      : Error("InvalidRelationSet", what) {}
};

struct ParseError : Error {
  ParseError(int line, int column, const std::string& what)
      : Error("ParseError", "parse error at line " + std::to_string(line) +
                                ", column " + std::to_string(column) + ": " + what),
        line(line), column(column) {}
  int line;
  int column;
};

struct SchemaError : Error {
  explicit SchemaError(std::string field, const std::string& what)
      : Error("SchemaError", what), field(std::move(field)) {}
  std::string field;
};

}  // namespace mono

#endif
