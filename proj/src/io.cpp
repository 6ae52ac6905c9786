#include "qsemi/io.hpp"

#include <cmath>
#include <fstream>

namespace qsemi {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw SchemaError(msg);
}

double finite_number(const Json& j, const char* what) {
  require(j.is_number(), std::string(what) + ": expected a number");
  const double v = j.get<double>();
  require(std::isfinite(v), std::string(what) + ": non-finite value rejected");
  return v;
}

void check_header(const Json& j, const std::string& kind) {
  require(j.is_object(), "workbench file must be a JSON object");
  require(j.contains("version") && j["version"].is_string() && j["version"] == "1",
          "unsupported or missing version (want \"1\")");
  require(j.contains("kind") && j["kind"].is_string() && j["kind"] == kind,
          "expected kind \"" + kind + "\"");
}

Json header(const std::string& kind) {
  Json j;
  j["version"] = "1";
  j["kind"] = kind;
  return j;
}

}  // namespace

Json complex_to_json(const Complex& z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw InvalidInput("non-finite value cannot be serialized");
  return Json::array({z.real(), z.imag()});
}

Complex complex_from_json(const Json& j) {
  require(j.is_array() && j.size() == 2, "complex number must be a [re, im] pair");
  return Complex(finite_number(j[0], "re"), finite_number(j[1], "im"));
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols) {
  require(j.is_array() && static_cast<Eigen::Index>(j.size()) == rows,
          "matrix has wrong row count");
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<size_t>(r)];
    require(row.is_array() && static_cast<Eigen::Index>(row.size()) == cols,
            "matrix has wrong column count");
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = complex_from_json(row[static_cast<size_t>(c)]);
  }
  return m;
}

Json algebra_to_json(const std::string& name, const StructureRef& s, const Matrix& delta) {
  Json j = header("algebra");
  j["name"] = name;
  j["blocks"] = s->blocks();
  j["delta"] = matrix_to_json(delta);
  return j;
}

Json algebra_to_json(const std::string& name, const QuantumSemigroup& qs) {
  return algebra_to_json(name, qs.str, qs.delta.mat);
}

ParsedAlgebra algebra_from_json(const Json& j) {
  check_header(j, "algebra");
  require(j.contains("name") && j["name"].is_string(), "algebra needs a name");
  require(j.contains("blocks") && j["blocks"].is_array() && !j["blocks"].empty(),
          "algebra needs a nonempty blocks array");
  std::vector<int> blocks;
  for (const Json& b : j["blocks"]) {
    require(b.is_number_integer() && b.get<int>() >= 1, "block sizes must be integers >= 1");
    blocks.push_back(b.get<int>());
  }
  auto s = BlockStructure::make(blocks);
  require(j.contains("delta"), "algebra needs a delta matrix");
  const Eigen::Index d = s->dim();
  Matrix delta = matrix_from_json(j["delta"], d * d, d);
  return ParsedAlgebra{j["name"].get<std::string>(), std::move(s), std::move(delta)};
}

Json state_to_json(const std::string& algebra_ref, const Functional& phi) {
  Json j = header("state");
  j["algebra_ref"] = algebra_ref;
  Json density = Json::array();
  for (const Matrix& rho : phi.rho) density.push_back(matrix_to_json(rho));
  j["density"] = density;
  return j;
}

Functional state_from_json(const Json& j, const StructureRef& s) {
  check_header(j, "state");
  require(j.contains("density") && j["density"].is_array(), "state needs a density array");
  const Json& density = j["density"];
  require(static_cast<int>(density.size()) == s->num_blocks(),
          "density block count does not match the algebra");
  std::vector<Matrix> rho;
  for (int b = 0; b < s->num_blocks(); ++b) {
    const int n = s->block_size(b);
    rho.push_back(matrix_from_json(density[static_cast<size_t>(b)], n, n));
  }
  return Functional(s, std::move(rho));
}

std::string state_algebra_ref(const Json& j) {
  check_header(j, "state");
  require(j.contains("algebra_ref") && j["algebra_ref"].is_string(),
          "state needs an algebra_ref string");
  return j["algebra_ref"].get<std::string>();
}

Json hypergroup_to_json(const std::string& algebra_ref, const ProtoHypergroup& h) {
  Json j = header("hypergroup");
  j["algebra_ref"] = algebra_ref;
  j["corner_blocks"] = h.system.corner->blocks();
  Json basis = Json::array();
  for (const Element& v : h.system.basis) {
    Json row = Json::array();
    for (Eigen::Index i = 0; i < v.coeffs.size(); ++i) row.push_back(complex_to_json(v.coeffs[i]));
    basis.push_back(std::move(row));
  }
  j["basis"] = basis;
  j["delta"] = matrix_to_json(h.delta);
  Json haar = Json::array();
  for (const Matrix& rho : h.haar.rho) haar.push_back(matrix_to_json(rho));
  j["haar"] = haar;
  return j;
}

Json table_to_json(const MultiplicationTable& t) {
  Json j;
  j["n"] = t.n;
  j["table"] = t.t;
  return j;
}

MultiplicationTable table_from_json(const Json& j) {
  require(j.is_object() && j.contains("n") && j["n"].is_number_integer() &&
              j.contains("table") && j["table"].is_array(),
          "table file must be {\"n\": int, \"table\": [[int]]}");
  MultiplicationTable t;
  t.n = j["n"].get<int>();
  require(t.n >= 1 && static_cast<int>(j["table"].size()) == t.n, "table has wrong row count");
  for (const Json& row : j["table"]) {
    require(row.is_array() && static_cast<int>(row.size()) == t.n, "table has wrong column count");
    std::vector<int> r;
    for (const Json& v : row) {
      require(v.is_number_integer(), "table entries must be integers");
      const int e = v.get<int>();
      require(e >= 0 && e < t.n, "table entries must index elements");
      r.push_back(e);
    }
    t.t.push_back(std::move(r));
  }
  return t;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write " + path);
  out << j.dump(1) << "\n";
  if (!out) throw SchemaError("write to " + path + " failed");
}

}  // namespace qsemi
