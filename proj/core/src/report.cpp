#include "urn/report.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "urn/error.hpp"

namespace urn {

const char* version() noexcept { return URN_VERSION; }

namespace {

Json number(double value) {
  if (std::isfinite(value)) return value;
  return nullptr;
}

template <typename T>
T require(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw DomainError(std::string("model JSON is missing \"") + key + "\"");
  }
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw DomainError(std::string("model JSON field \"") + key + "\" has the wrong type");
  }
}

}  // namespace

UrnModel parse_model(const Json& doc) {
  const Json& n_field = doc.is_object() && doc.contains("n") ? doc.at("n") : Json();
  if (!n_field.is_number_integer() || n_field.get<std::int64_t>() < 1 ||
      n_field.get<std::int64_t>() > std::numeric_limits<std::uint32_t>::max()) {
    throw DomainError("model JSON needs a positive integer \"n\"");
  }
  const auto n = n_field.get<std::uint32_t>();
  const Json urns = require<Json>(doc, "urns");
  const auto kind = require<std::string>(urns, "kind");
  if (kind == "uniform") {
    const Json& m_field = urns.contains("m") ? urns.at("m") : Json();
    if (!m_field.is_number_integer() || m_field.get<std::int64_t>() < 1 ||
        m_field.get<std::int64_t>() > std::numeric_limits<std::uint32_t>::max()) {
      throw DomainError("uniform urns need a positive integer \"m\"");
    }
    return build_model(n, UniformUrns{m_field.get<std::uint32_t>()});
  }
  if (kind == "explicit") {
    return build_model(n, ExplicitUrns{require<std::vector<double>>(urns, "p")});
  }
  throw DomainError("urn kind must be \"uniform\" or \"explicit\", got \"" + kind + "\"");
}

UrnModel parse_model(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("model is not valid JSON: ") + e.what());
  }
  return parse_model(doc);
}

Json to_json(const UrnModel& model) {
  Json urns;
  if (model.is_uniform()) {
    urns["kind"] = "uniform";
    urns["m"] = model.m();
  } else {
    urns["kind"] = "explicit";
    urns["p"] = std::vector<double>(model.p().begin(), model.p().end());
  }
  Json out;
  out["n"] = model.n();
  out["urns"] = urns;
  out["max_p"] = model.max_p();
  out["gamma"] = model.gamma();
  out["few_urns"] = model.few_urns();
  return out;
}

Json to_json(const IntegerPmf& pmf) {
  Json out;
  out["provenance"] = to_string(pmf.provenance());
  out["support"] = std::vector<std::int64_t>(pmf.support().begin(), pmf.support().end());
  out["mass"] = std::vector<double>(pmf.mass().begin(), pmf.mass().end());
  if (pmf.provenance() == PmfProvenance::kEmpirical) out["sample_count"] = pmf.sample_count();
  return out;
}

Json to_json(const Moments& moments) {
  return Json{{"mean", number(moments.mean)}, {"variance", number(moments.variance)}};
}

Json to_json(const McSummary& s) {
  Json out;
  out["samples"] = s.samples;
  out["mean"] = number(s.mean);
  out["mean_stderr"] = number(s.mean_stderr);
  out["variance"] = number(s.variance);
  out["variance_stderr"] = number(s.variance_stderr);
  out["d_hat"] = number(s.d_hat);
  out["exact_standardization"] = s.exact_standardization;
  out["d_radius"] = number(s.d_radius);
  out["pmf"] = to_json(s.pmf);
  return out;
}

Json to_json(const CouplingBatch& b) {
  Json out;
  out["coupler"] = b.kind == CouplerKind::kUniform ? "uniform" : "general";
  out["samples"] = b.samples;
  out["y_histogram"] = b.y_histogram;
  out["y_sb_histogram"] = b.y_sb_histogram;
  out["mean_increment"] = number(b.increment.mean());
  out["mean_increment_stderr"] = number(b.increment.stderr_of_mean());
  out["max_abs_increment"] = b.max_abs_increment;
  out["increment_bound"] = increment_bound(b.kind);
  out["bound_violations"] = b.bound_violations;
  out["imports"] = b.imports;
  return out;
}

Json to_json(const DeltaEstimate& e) {
  Json out;
  out["samples"] = e.samples;
  out["delta_hat"] = number(e.delta_hat);
  out["delta_stderr"] = number(e.delta_stderr);
  out["delta_sq"] = number(e.delta_sq);
  out["delta_sq_stderr"] = number(e.delta_sq_stderr);
  out["mean_increment"] = number(e.mean_increment);
  out["delta_sq_binned_experimental"] = number(e.delta_sq_binned);
  out["kind"] = "allocation-conditional upper-bound surrogate";
  return out;
}

Json to_json(const BoundReport& r) {
  Json ctx;
  ctx["n"] = r.context.n;
  ctx["m"] = r.context.m;
  ctx["uniform"] = r.context.uniform;
  ctx["mu"] = number(r.context.mu);
  ctx["sigma"] = number(r.context.sigma);
  ctx["gamma"] = number(r.context.gamma);
  ctx["max_p"] = number(r.context.max_p);
  ctx["sum_p_squared"] = number(r.context.sum_p_squared);
  ctx["few_urns"] = r.context.few_urns;
  Json flags = Json::array();
  for (const auto& f : r.flags) {
    flags.push_back({{"name", f.name}, {"lhs", number(f.lhs)}, {"rhs", number(f.rhs)}, {"holds", f.holds}});
  }
  Json components = Json::object();
  for (const auto& [k, v] : r.components) components[k] = number(v);
  Json bounds = Json::array();
  for (const auto& b : r.bounds) {
    Json terms = Json::array();
    for (const auto& t : b.terms) terms.push_back({{"name", t.name}, {"value", number(t.value)}});
    bounds.push_back({{"name", b.name},
                      {"value", number(b.value)},
                      {"verdict", to_string(b.verdict)},
                      {"requires", b.requires_flags},
                      {"terms", terms}});
  }
  return Json{{"context", ctx}, {"flags", flags}, {"components", components}, {"bounds", bounds}};
}

Json to_json(const CheckReport& r) {
  Json details = Json::array();
  for (const auto& d : r.details) {
    Json extra = Json::object();
    for (const auto& [k, v] : d.extra) extra[k] = number(v);
    details.push_back({{"label", d.label},
                       {"estimate", number(d.estimate)},
                       {"bound", number(d.bound)},
                       {"stderr", number(d.standard_error)},
                       {"margin", number(d.margin)},
                       {"passed", d.passed},
                       {"extra", extra}});
  }
  Json summary = Json::object();
  for (const auto& [k, v] : r.summary) summary[k] = number(v);
  return Json{{"check", r.name},     {"passed", r.passed},   {"instances", r.instances},
              {"worst_margin", number(r.worst_margin)},      {"samples", r.samples},
              {"seeds", r.seeds},    {"summary", summary},   {"notes", r.notes},
              {"details", details}};
}

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

void write_pmf_csv(std::ostream& out, const IntegerPmf& pmf) {
  out << "value,probability\n";
  for (std::size_t i = 0; i < pmf.support().size(); ++i) {
    out << pmf.support()[i] << ',' << format_double(pmf.mass()[i]) << '\n';
  }
}

void write_coupling_csv(std::ostream& out, std::span<const CouplingDraw> draws) {
  out << "y,y_sb,increment,b_flag\n";
  for (const CouplingDraw& d : draws) {
    out << d.y << ',' << d.y_sb << ',' << d.increment() << ',' << (d.imported ? 1 : 0) << '\n';
  }
}

}  // namespace urn
