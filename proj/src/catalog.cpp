#include "erpg2/io.hpp"

#include "catalog_data.hpp"

#include <map>
#include <sstream>

namespace erpg2 {

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"J", "M2", "M3", "B", "M1"};
  return names;
}

const std::string& catalog_text(const std::string& name) {
  static const std::map<std::string, std::string> texts = {
      {"J", catalog_data::kJ},   {"M2", catalog_data::kM2}, {"M3", catalog_data::kM3},
      {"B", catalog_data::kB},   {"M1", catalog_data::kM1},
  };
  auto it = texts.find(name);
  if (it == texts.end()) throw std::runtime_error("unknown catalog entry: " + name);
  return it->second;
}

Quadruple<Exact> catalog(const std::string& name) {
  return materialize_exact(parse_quadruple_text(catalog_text(name)));
}

} // namespace erpg2

namespace erpg2::fixtures {

Matrix<Exact> equivalence_witness_J() {
  static const char* rows[7] = {
      "0 0 3*sqrt(2) 3*sqrt(2) 0 0 0",
      "0 0 sqrt(6) -sqrt(6) -2*sqrt(6) 0 0",
      "-3*sqrt(2) -3*sqrt(2) 0 0 0 0 0",
      "-sqrt(6) sqrt(6) 0 0 0 0 2*sqrt(6)",
      "0 0 0 0 0 -6 0",
      "0 0 -2*sqrt(3) 2*sqrt(3) -2*sqrt(3) 0 0",
      "-2*sqrt(3) 2*sqrt(3) 0 0 0 0 -2*sqrt(3)",
  };
  Matrix<Exact> h(7, 7);
  Exact sixth = Exact::rational(1, 6);
  for (int i = 0; i < 7; ++i) {
    std::istringstream in(rows[i]);
    std::string tok;
    for (int j = 0; j < 7; ++j) {
      in >> tok;
      h(i, j) = sixth * parse_surd(tok);
    }
  }
  return h;
}

} // namespace erpg2::fixtures
