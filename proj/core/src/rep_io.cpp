#include "superosc/rep_io.hpp"

#include "superosc/error.hpp"

namespace superosc {

namespace {

const char* kind_name(FactorKind kind) {
  switch (kind) {
    case FactorKind::Boson: return "boson";
    case FactorKind::Fermion: return "fermion";
    case FactorKind::Exact: return "exact";
    case FactorKind::Grassmann: return "grassmann";
  }
  return "boson";
}

FactorKind kind_from_name(const std::string& name) {
  if (name == "boson") return FactorKind::Boson;
  if (name == "fermion") return FactorKind::Fermion;
  if (name == "exact") return FactorKind::Exact;
  if (name == "grassmann") return FactorKind::Grassmann;
  throw Error(ErrorCode::InvalidFormat, "unknown factor kind '" + name + "'");
}

}  // namespace

nlohmann::json complex_to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::InvalidFormat, "complex value must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) data.push_back(complex_to_json(m(i, k)));
  }
  return {{"rows", m.rows()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
  try {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto& data = j.at("data");
    if (rows <= 0 || static_cast<Eigen::Index>(data.size()) % rows != 0) {
      throw Error(ErrorCode::InvalidFormat, "matrix data length is not a multiple of rows");
    }
    const Eigen::Index cols = static_cast<Eigen::Index>(data.size()) / rows;
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(data[static_cast<std::size_t>(i * cols + k)]);
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidFormat, e.what());
  }
}

nlohmann::json to_json(const Representation& rep) {
  nlohmann::json j;
  j["q"] = complex_to_json(rep.q);
  j["dims"] = rep.dims();
  j["parity"] = rep.parity;
  nlohmann::json bindings = nlohmann::json::object();
  for (const auto& [name, m] : rep.bindings) bindings[name] = matrix_to_json(m);
  j["bindings"] = std::move(bindings);
  j["headroom"] = rep.headroom;
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& f : rep.factors) factors.push_back(kind_name(f.kind));
  j["factors"] = std::move(factors);
  nlohmann::json letters = nlohmann::json::object();
  for (const auto& [name, entry] : rep.table.entries()) {
    letters[name] = {{"parity", static_cast<int>(entry.parity)}, {"adjoint", entry.adjoint}};
  }
  j["letters"] = std::move(letters);
  return j;
}

Representation representation_from_json(const nlohmann::json& j) {
  try {
    Representation rep;
    rep.q = complex_from_json(j.at("q"));
    const auto dims = j.at("dims").get<std::vector<int>>();
    std::vector<std::string> kinds;
    if (j.contains("factors")) kinds = j.at("factors").get<std::vector<std::string>>();
    if (!kinds.empty() && kinds.size() != dims.size()) {
      throw Error(ErrorCode::InvalidFormat, "factors and dims differ in length");
    }
    for (std::size_t k = 0; k < dims.size(); ++k) {
      FactorKind kind = kinds.empty() ? (dims[k] == 2 ? FactorKind::Fermion : FactorKind::Boson) : kind_from_name(kinds[k]);
      rep.factors.push_back(Factor{kind, dims[k]});
    }
    rep.parity = j.at("parity").get<ParityVector>();
    for (const auto& [name, m] : j.at("bindings").items()) {
      Matrix mat = matrix_from_json(m);
      if (mat.rows() != rep.dimension() || mat.cols() != rep.dimension()) {
        throw Error(ErrorCode::DimensionMismatch, "binding '" + name + "' does not match dims");
      }
      rep.bindings[name] = std::move(mat);
    }
    if (j.contains("headroom")) rep.headroom = j.at("headroom").get<std::map<std::string, int>>();
    if (j.contains("letters")) {
      // Declare all letters first, then attach partners.
      for (const auto& [name, entry] : j.at("letters").items()) {
        rep.table.declare(name, entry.at("parity").get<int>() ? Parity::Odd : Parity::Even);
      }
      for (const auto& [name, entry] : j.at("letters").items()) {
        const auto partner = entry.at("adjoint").get<std::string>();
        if (partner == name) {
          rep.table.declare_self_adjoint(name, rep.table.parity(name));
        } else if (!partner.empty()) {
          rep.table.declare_pair(name, partner, rep.table.parity(name));
        }
      }
    } else {
      for (const auto& [name, m] : rep.bindings) rep.table.declare(name, Parity::Even);
    }
    if (static_cast<Eigen::Index>(rep.parity.size()) != rep.dimension()) {
      throw Error(ErrorCode::InvalidFormat, "parity vector length does not match dims");
    }
    return rep;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidFormat, e.what());
  }
}

}  // namespace superosc
