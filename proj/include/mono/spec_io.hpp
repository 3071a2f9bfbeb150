#ifndef MONO_SPEC_IO_HPP
#define MONO_SPEC_IO_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mono/algebra.hpp"
#include "mono/systems.hpp"

namespace mono {

/// Parsed and validated content of a system description file.
struct SystemSpec {
  Eigen::Index rank;
  RationalMatrixForm form;
  std::optional<RationalMatrixForm> higgs;
  std::vector<RationalMatrixForm> theta;     ///< scalar form basis, may be empty
  std::optional<RelationSet> relations;      ///< algebra block, when present
  std::map<std::string, Path> loops;
  std::vector<std::string> generator_order;  ///< defaults to sorted loop names
  std::map<std::string, std::vector<std::pair<std::string, int>>> words;

  const Path& loop(const std::string& name) const;
  std::vector<Path> generator_loops() const;
  /// Word letters resolved to indices into generator_order.
  LoopWord word(const std::string& name) const;
};

/// Parses a JSON document. Throws ParseError (with line/column) on malformed
/// JSON and SchemaError (naming the field) on invalid content.
SystemSpec parse_spec(const std::string& text);

/// Reads and parses the file at path.
SystemSpec load_spec(const std::string& path);

}  // namespace mono

#endif
