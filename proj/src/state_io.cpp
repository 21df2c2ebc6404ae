#include "qcoh/state_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qcoh {

namespace {

using nlohmann::json;

std::vector<Complex> complex_list(const json& arr, const char* field) {
  if (!arr.is_array()) throw Error(ErrorCode::ParseError, std::string(field) + " must be an array");
  std::vector<Complex> out;
  out.reserve(arr.size());
  for (const auto& pair : arr) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw Error(ErrorCode::ParseError, std::string(field) + " entries must be [re, im] number pairs");
    }
    out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return out;
}

std::size_t read_dim(const json& doc) {
  if (!doc.contains("dim")) throw Error(ErrorCode::ParseError, "missing field dim");
  const auto& d = doc["dim"];
  if (!d.is_number_integer() || d.get<long long>() < 1) throw Error(ErrorCode::ParseError, "dim must be a positive integer");
  return std::size_t(d.get<long long>());
}

json complex_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json pure_json(const PureState& psi) {
  json amps = json::array();
  for (std::size_t i = 0; i < psi.dim(); ++i) amps.push_back(complex_json(psi[i]));
  return {{"dim", psi.dim()}, {"amplitudes", std::move(amps)}};
}

}  // namespace

StateRecord parse_state(const std::string& text, double tol) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "state file must hold a JSON object");

  const int forms = int(doc.contains("entries")) + int(doc.contains("amplitudes")) + int(doc.contains("bloch"));
  if (forms != 1) throw Error(ErrorCode::ParseError, "exactly one of entries, amplitudes, bloch is required");

  if (doc.contains("bloch")) {
    const auto& b = doc["bloch"];
    if (!b.is_array() || b.size() != 3 || !b[0].is_number() || !b[1].is_number() || !b[2].is_number()) {
      throw Error(ErrorCode::ParseError, "bloch must be [nx, ny, nz]");
    }
    if (doc.contains("dim") && read_dim(doc) != 2) throw Error(ErrorCode::DimensionNot2, "bloch form requires dim 2");
    const BlochVector n{b[0].get<double>(), b[1].get<double>(), b[2].get<double>()};
    if (n.norm() > 1.0 + tol) throw Error(ErrorCode::NotPSD, "Bloch vector norm = " + std::to_string(n.norm()));
    return {bloch_to_density(n), std::nullopt};
  }

  const std::size_t d = read_dim(doc);
  if (doc.contains("amplitudes")) {
    const auto amps = complex_list(doc["amplitudes"], "amplitudes");
    if (amps.size() != d) throw Error(ErrorCode::ParseError, "amplitudes must hold dim pairs");
    CVector a(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) a(Eigen::Index(i)) = amps[i];
    PureState psi = PureState::from_amplitudes(a, tol);
    return {psi.projector(), psi};
  }

  const auto entries = complex_list(doc["entries"], "entries");
  if (entries.size() != d * d) throw Error(ErrorCode::ParseError, "entries must hold dim*dim pairs");
  CMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) m(Eigen::Index(i), Eigen::Index(j)) = entries[i * d + j];
  }
  return {validate_density(m, tol), std::nullopt};
}

StateRecord load_state(const std::filesystem::path& path, double tol) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state(buf.str(), tol);
}

std::string density_to_json(const DensityMatrix& rho) {
  json entries = json::array();
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    for (std::size_t j = 0; j < rho.dim(); ++j) entries.push_back(complex_json(rho(i, j)));
  }
  return json{{"dim", rho.dim()}, {"entries", std::move(entries)}}.dump();
}

std::string pure_to_json(const PureState& psi) { return pure_json(psi).dump(); }

std::string decomposition_to_json(const Decomposition& decomp) {
  json elements = json::array();
  for (const auto& el : decomp.elements) elements.push_back({{"weight", el.weight}, {"state", pure_json(el.state)}});
  return json{{"dim", decomp.target_dim}, {"elements", std::move(elements)}}.dump();
}

}  // namespace qcoh
