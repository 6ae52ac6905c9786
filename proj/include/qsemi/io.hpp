#ifndef QSEMI_IO_HPP
#define QSEMI_IO_HPP

// Workbench files: JSON with version "1" and a kind tag.  Complex numbers
// are always two-element [re, im] arrays; non-finite values are rejected in
// both directions; parsing a serialized object reproduces it bit-exactly.
//
//   algebra    {name, blocks, delta}   delta row-major, d^2 rows of d pairs
//   state      {algebra_ref, density}  one n_b x n_b array per block
//   hypergroup {algebra_ref, corner_blocks, basis, delta, haar}
//   report     free-form command output
//
// Multiplication tables travel as {"n": int, "table": [[int]]}.

#include <string>

#include <json.hpp>

#include "qsemi/catalog.hpp"
#include "qsemi/hyper.hpp"

namespace qsemi {

using Json = nlohmann::ordered_json;

Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols);

// An algebra file before verification; callers choose between
// make_quantum_semigroup (throwing) and verify_quantum_semigroup (reporting).
struct ParsedAlgebra {
  std::string name;
  StructureRef str;
  Matrix delta;
};

Json algebra_to_json(const std::string& name, const StructureRef& s, const Matrix& delta);
Json algebra_to_json(const std::string& name, const QuantumSemigroup& qs);
ParsedAlgebra algebra_from_json(const Json& j);

Json state_to_json(const std::string& algebra_ref, const Functional& phi);
// Validates shapes against s; positivity/trace are the caller's business.
Functional state_from_json(const Json& j, const StructureRef& s);
std::string state_algebra_ref(const Json& j);

Json hypergroup_to_json(const std::string& algebra_ref, const ProtoHypergroup& h);

Json table_to_json(const MultiplicationTable& t);
MultiplicationTable table_from_json(const Json& j);

// Throws SchemaError on unreadable files or malformed JSON.
Json load_json(const std::string& path);
void save_json(const std::string& path, const Json& j);

}  // namespace qsemi

#endif
