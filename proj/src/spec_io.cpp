#include "mono/spec_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mono {

namespace {

using nlohmann::json;

Complex get_complex(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw SchemaError(field, field + " must be a [re, im] pair of numbers");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Complex> get_complex_list(const json& j, const std::string& field) {
  if (!j.is_array())
    throw SchemaError(field, field + " must be an array of [re, im] pairs");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(get_complex(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

Matrix get_matrix(const json& j, Eigen::Index rank, const std::string& field) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rank)
    throw SchemaError(field, field + " must be square of declared rank");
  Matrix m(rank, rank);
  for (Eigen::Index r = 0; r < rank; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rank)
      throw SchemaError(field, field + " must be square of declared rank");
    for (Eigen::Index c = 0; c < rank; ++c)
      m(r, c) = get_complex(row[static_cast<std::size_t>(c)],
                            field + "[" + std::to_string(r) + "][" +
                                std::to_string(c) + "]");
  }
  return m;
}

double get_positive(const json& j, const std::string& field) {
  if (!j.is_number() || !(j.get<double>() > 0))
    throw SchemaError(field, field + " must be a positive number");
  return j.get<double>();
}

RationalMatrixForm get_form(const json& j, Eigen::Index rank,
                            const std::string& field) {
  if (!j.contains("poles"))
    throw SchemaError(field + ".poles", field + " needs a poles array");
  const auto poles = get_complex_list(j.at("poles"), field + ".poles");
  for (std::size_t i = 0; i < poles.size(); ++i)
    for (std::size_t k = i + 1; k < poles.size(); ++k)
      if (poles[i] == poles[k])
        throw SchemaError(field + ".poles", "poles distinct");

  if (!j.contains("residues"))
    throw SchemaError(field + ".residues", field + " needs a residues array");
  const json& res = j.at("residues");
  if (!res.is_array() || res.size() != poles.size())
    throw SchemaError(field + ".residues",
                      field + ".residues must list one matrix per pole");
  std::vector<Matrix> residues;
  residues.reserve(res.size());
  for (std::size_t i = 0; i < res.size(); ++i)
    residues.push_back(get_matrix(res[i], rank,
                                  field + ".residues[" + std::to_string(i) + "]"));

  std::vector<Matrix> polynomial;
  if (j.contains("polynomial")) {
    const json& poly = j.at("polynomial");
    if (!poly.is_array())
      throw SchemaError(field + ".polynomial",
                        field + ".polynomial must be an array of matrices");
    for (std::size_t i = 0; i < poly.size(); ++i)
      polynomial.push_back(get_matrix(
          poly[i], rank, field + ".polynomial[" + std::to_string(i) + "]"));
  }
  return RationalMatrixForm(rank, poles, std::move(residues),
                            std::move(polynomial));
}

RationalMatrixForm get_scalar_form(const json& j, const std::string& field) {
  if (!j.contains("poles"))
    throw SchemaError(field + ".poles", field + " needs a poles array");
  const auto poles = get_complex_list(j.at("poles"), field + ".poles");
  std::vector<Complex> residues;
  if (j.contains("residues"))
    residues = get_complex_list(j.at("residues"), field + ".residues");
  if (residues.size() != poles.size())
    throw SchemaError(field + ".residues",
                      field + ".residues must list one value per pole");
  std::vector<Complex> polynomial;
  if (j.contains("polynomial"))
    polynomial = get_complex_list(j.at("polynomial"), field + ".polynomial");
  return RationalMatrixForm::scalar(poles, std::move(residues),
                                    std::move(polynomial));
}

Segment get_segment(const json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("kind"))
    throw SchemaError(field, field + " must be an object with a kind");
  const std::string kind = j.at("kind").is_string()
                               ? j.at("kind").get<std::string>()
                               : throw SchemaError(field + ".kind",
                                                   "segment kind must be a string");
  if (kind == "line") {
    return Segment::line(get_complex(j.at("from"), field + ".from"),
                         get_complex(j.at("to"), field + ".to"));
  }
  if (kind == "arc") {
    if (!j.contains("from_angle") || !j.contains("to_angle") ||
        !j.at("from_angle").is_number() || !j.at("to_angle").is_number())
      throw SchemaError(field, "arc needs numeric from_angle and to_angle");
    return Segment::arc(get_complex(j.at("center"), field + ".center"),
                        get_positive(j.at("radius"), field + ".radius"),
                        j.at("from_angle").get<double>(),
                        j.at("to_angle").get<double>());
  }
  if (kind == "bezier") {
    if (!j.contains("points") || !j.at("points").is_array() ||
        j.at("points").size() != 4)
      throw SchemaError(field + ".points", "bezier needs 4 control points");
    const auto pts = get_complex_list(j.at("points"), field + ".points");
    return Segment::cubic(pts[0], pts[1], pts[2], pts[3]);
  }
  throw SchemaError(field + ".kind", "unknown segment kind '" + kind + "'");
}

Path get_loop(const json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("kind"))
    throw SchemaError(field, field + " must be an object with a kind");
  if (!j.at("kind").is_string())
    throw SchemaError(field + ".kind", "loop kind must be a string");
  const std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "circle")
      return circle(get_complex(j.at("center"), field + ".center"),
                    get_positive(j.at("radius"), field + ".radius"));
    if (kind == "lasso")
      return lasso(get_complex(j.at("base"), field + ".base"),
                   get_complex(j.at("around"), field + ".around"),
                   get_positive(j.at("radius"), field + ".radius"));
    if (kind == "polyline") {
      if (!j.contains("points"))
        throw SchemaError(field + ".points", "polyline needs points");
      const auto pts = get_complex_list(j.at("points"), field + ".points");
      return polyline(pts);
    }
    if (kind == "path") {
      if (!j.contains("segments") || !j.at("segments").is_array() ||
          j.at("segments").empty())
        throw SchemaError(field + ".segments",
                          "path needs a nonempty segments array");
      std::vector<Segment> segs;
      const json& arr = j.at("segments");
      for (std::size_t i = 0; i < arr.size(); ++i)
        segs.push_back(get_segment(arr[i],
                                   field + ".segments[" + std::to_string(i) + "]"));
      return Path(std::move(segs));
    }
  } catch (const std::invalid_argument& err) {
    throw SchemaError(field, field + ": " + err.what());
  }
  throw SchemaError(field + ".kind", "unknown loop kind '" + kind + "'");
}

}  // namespace

const Path& SystemSpec::loop(const std::string& name) const {
  const auto it = loops.find(name);
  if (it == loops.end())
    throw SchemaError("loops", "loop '" + name + "' is not defined");
  return it->second;
}

std::vector<Path> SystemSpec::generator_loops() const {
  std::vector<Path> out;
  out.reserve(generator_order.size());
  for (const std::string& name : generator_order) out.push_back(loop(name));
  return out;
}

LoopWord SystemSpec::word(const std::string& name) const {
  const auto it = words.find(name);
  if (it == words.end())
    throw SchemaError("words", "word '" + name + "' is not defined");
  LoopWord w;
  for (const auto& [loop_name, exp] : it->second) {
    const auto pos = std::find(generator_order.begin(), generator_order.end(),
                               loop_name);
    if (pos == generator_order.end())
      throw SchemaError("words." + name,
                        "word letter '" + loop_name + "' is not a generator");
    w.letters.push_back(
        {static_cast<int>(pos - generator_order.begin()), exp});
  }
  return w;
}

SystemSpec parse_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& err) {
    int line = 1, column = 1;
    const std::size_t stop = std::min(text.size(), err.byte);
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(line, column, err.what());
  }
  if (!j.is_object()) throw SchemaError("", "top level must be an object");

  if (!j.contains("rank") || !j.at("rank").is_number_integer() ||
      j.at("rank").get<long>() < 1)
    throw SchemaError("rank", "rank must be a positive integer");
  const Eigen::Index rank = j.at("rank").get<Eigen::Index>();

  RationalMatrixForm form = get_form(j, rank, "");

  std::optional<RationalMatrixForm> higgs;
  if (j.contains("higgs")) higgs = get_form(j.at("higgs"), rank, "higgs");

  std::vector<RationalMatrixForm> theta;
  if (j.contains("theta")) {
    const json& arr = j.at("theta");
    if (!arr.is_array())
      throw SchemaError("theta", "theta must be an array of scalar forms");
    for (std::size_t i = 0; i < arr.size(); ++i)
      theta.push_back(get_scalar_form(arr[i], "theta[" + std::to_string(i) + "]"));
  }

  std::optional<RelationSet> relations;
  if (j.contains("algebra")) {
    const json& alg = j.at("algebra");
    if (!alg.is_object() || !alg.contains("generators") ||
        !alg.at("generators").is_number_integer() ||
        alg.at("generators").get<long>() < 1)
      throw SchemaError("algebra.generators",
                        "algebra.generators must be a positive integer");
    const int g = alg.at("generators").get<int>();
    std::vector<Matrix> rels;
    if (alg.contains("relations")) {
      const json& arr = alg.at("relations");
      if (!arr.is_array())
        throw SchemaError("algebra.relations",
                          "algebra.relations must be an array of matrices");
      for (std::size_t i = 0; i < arr.size(); ++i)
        rels.push_back(get_matrix(arr[i], g,
                                  "algebra.relations[" + std::to_string(i) + "]"));
    }
    try {
      relations.emplace(g, std::move(rels));
    } catch (const InvalidRelationSet& err) {
      throw SchemaError("algebra.relations", err.what());
    }
  }

  std::map<std::string, Path> loops;
  if (j.contains("loops")) {
    const json& obj = j.at("loops");
    if (!obj.is_object())
      throw SchemaError("loops", "loops must map names to loop objects");
    for (const auto& [name, def] : obj.items())
      loops.emplace(name, get_loop(def, "loops." + name));
  }

  std::vector<std::string> generator_order;
  if (j.contains("generators")) {
    const json& arr = j.at("generators");
    if (!arr.is_array())
      throw SchemaError("generators", "generators must be an array of loop names");
    for (const json& name : arr) {
      if (!name.is_string())
        throw SchemaError("generators", "generators must be an array of loop names");
      if (loops.find(name.get<std::string>()) == loops.end())
        throw SchemaError("generators",
                          "generator '" + name.get<std::string>() +
                              "' names an undefined loop");
      generator_order.push_back(name.get<std::string>());
    }
  } else {
    for (const auto& [name, p] : loops) generator_order.push_back(name);
  }

  std::map<std::string, std::vector<std::pair<std::string, int>>> words;
  if (j.contains("words")) {
    const json& obj = j.at("words");
    if (!obj.is_object())
      throw SchemaError("words", "words must map names to letter arrays");
    for (const auto& [name, arr] : obj.items()) {
      if (!arr.is_array())
        throw SchemaError("words." + name, "a word is an array of [loop, exp]");
      std::vector<std::pair<std::string, int>> letters;
      for (const json& letter : arr) {
        if (!letter.is_array() || letter.size() != 2 || !letter[0].is_string() ||
            !letter[1].is_number_integer())
          throw SchemaError("words." + name,
                            "each letter must be [loop name, +-1]");
        const int exp = letter[1].get<int>();
        if (exp != 1 && exp != -1)
          throw SchemaError("words." + name, "word exponents must be +1 or -1");
        const std::string loop_name = letter[0].get<std::string>();
        if (loops.find(loop_name) == loops.end())
          throw SchemaError("words." + name,
                            "word references undefined loop '" + loop_name + "'");
        letters.push_back({loop_name, exp});
      }
      words.emplace(name, std::move(letters));
    }
  }

  return SystemSpec{rank,
                    std::move(form),
                    std::move(higgs),
                    std::move(theta),
                    std::move(relations),
                    std::move(loops),
                    std::move(generator_order),
                    std::move(words)};
}

SystemSpec load_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("", "cannot open spec file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

}  // namespace mono
