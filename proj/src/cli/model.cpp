#include "cli/model.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bfvlab::cli {

using nlohmann::json;

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) ok = true;
    if (!ok)
      throw InputError("model file: unknown key '" + it.key() + "' in " +
                       where);
  }
}

}  // namespace

Model parse_model(const std::string& text, const std::string& path) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw InputError("model file is not valid JSON: " + std::string(e.what()));
  }
  if (!j.is_object()) throw InputError("model file must be a JSON object");
  reject_unknown(j, {"name", "algebra", "constraints", "formal", "lattice"},
                 "the top level");

  Model m;
  m.path = path;
  m.hash = fnv1a64_hex(text);
  m.name = j.value("name", std::string{});

  if (j.contains("algebra")) {
    const json& a = j["algebra"];
    reject_unknown(a, {"generators", "relations", "derivations"}, "algebra");
    AlgebraSection sec;
    for (const auto& g : a.value("generators", json::array())) {
      reject_unknown(g, {"name", "degree"}, "algebra.generators[]");
      sec.generators.emplace_back(g.at("name").get<std::string>(),
                                  g.at("degree").get<int>());
    }
    if (a.contains("relations")) {
      const json& r = a["relations"];
      reject_unknown(r, {"annihilate", "substitute"}, "algebra.relations");
      for (const auto& s : r.value("annihilate", json::array()))
        sec.annihilate.push_back(s.get<std::string>());
      for (const auto& s : r.value("substitute", json::array())) {
        reject_unknown(s, {"lhs", "rhs"}, "algebra.relations.substitute[]");
        sec.substitute.emplace_back(s.at("lhs").get<std::string>(),
                                    s.at("rhs").get<std::string>());
      }
    }
    const json derivs = a.value("derivations", json::object());
    for (auto it = derivs.begin(); it != derivs.end(); ++it) {
      const json& d = it.value();
      reject_unknown(d, {"degree", "images"}, "algebra.derivations." + it.key());
      AlgebraSection::DerivationDecl decl;
      decl.degree = d.value("degree", 1);
      for (auto im = d.at("images").begin(); im != d.at("images").end(); ++im)
        decl.images[im.key()] = im.value().get<std::string>();
      sec.derivations[it.key()] = std::move(decl);
    }
    m.algebra = std::move(sec);
  }

  if (j.contains("constraints")) {
    const json& c = j["constraints"];
    reject_unknown(c, {"pairs", "H", "f"}, "constraints");
    ConstraintSection sec;
    sec.pairs = c.at("pairs").get<int>();
    for (const auto& s : c.at("H")) sec.H.push_back(s.get<std::string>());
    for (const auto& e : c.value("f", json::array())) {
      reject_unknown(e, {"i", "j", "k", "value"}, "constraints.f[]");
      sec.f.emplace_back(e.at("i").get<int>(), e.at("j").get<int>(),
                         e.at("k").get<int>(),
                         e.at("value").get<std::string>());
    }
    m.constraints = std::move(sec);
  }

  if (j.contains("formal")) {
    const json& f = j["formal"];
    reject_unknown(f, {"disable_rules"}, "formal");
    FormalSection sec;
    for (const auto& s : f.value("disable_rules", json::array()))
      sec.disable_rules.push_back(s.get<std::string>());
    m.formal = std::move(sec);
  }

  if (j.contains("lattice")) {
    const json& l = j["lattice"];
    reject_unknown(l, {"d", "N", "seed", "fd_step", "k", "states"}, "lattice");
    LatticeSection sec;
    sec.d = l.value("d", 2);
    if (l.contains("N")) {
      sec.N.clear();
      for (const auto& n : l["N"]) sec.N.push_back(n.get<int>());
    }
    sec.seed = l.value("seed", 42u);
    sec.fd_step = l.value("fd_step", 1e-4);
    sec.k = l.value("k", 2);
    sec.states = l.value("states", 20);
    m.lattice = std::move(sec);
  }
  return m;
}

Model load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open model file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str(), path);
}

}  // namespace bfvlab::cli
