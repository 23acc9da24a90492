#include "qelim/cli.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <variant>

#include "json.hpp"
#include "qelim/parser.hpp"

namespace qelim::cli {

namespace {

using Json = nlohmann::ordered_json;
using sn::Nat;

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Witnesses along the satisfying path, outermost first, and the first
// universal met on that path.
struct EvidencePath {
  std::vector<Nat> witnesses;
  std::optional<sn::Evidence> universal;
};

void walk(const sn::Evidence& ev, EvidencePath& path) {
  using K = sn::Evidence::Kind;
  switch (ev.kind()) {
    case K::AtomHolds:
    case K::RefutedAntecedent: return;
    case K::Left:
    case K::Right:
    case K::Consequent: walk(ev.sub(), path); return;
    case K::Pair:
      walk(ev.first(), path);
      walk(ev.second(), path);
      return;
    case K::Witness:
      path.witnesses.push_back(ev.value());
      walk(ev.sub(), path);
      return;
    case K::Universal:
      if (!path.universal) path.universal = ev;
      return;
  }
}

std::optional<Nat> counterexample(const sn::Refutation& r) {
  using K = sn::Refutation::Kind;
  switch (r.kind()) {
    case K::Counterexample: return r.value();
    case K::LeftFails:
    case K::RightFails:
    case K::ImpliesFails: return counterexample(r.sub());
    case K::BothFail:
      if (auto v = counterexample(r.first())) return v;
      return counterexample(r.second());
    default: return std::nullopt;
  }
}

std::string join(const std::vector<Nat>& vs) {
  std::string s;
  for (Nat v : vs) {
    if (!s.empty()) s += ' ';
    s += std::to_string(v);
  }
  return s;
}

struct Prepared {
  std::vector<std::string> names;
  sn::Env env;
  sn::Formula formula;
};

Prepared prepare(const Config& cfg) {
  std::vector<std::string> names = parser::free_names(cfg.formula);
  sn::Formula f = parser::parse(cfg.formula, names);
  std::map<std::string, Nat> given;
  for (const auto& [name, value] : cfg.env) {
    if (!given.emplace(name, value).second) throw UsageError("variable '" + name + "' bound twice");
    if (std::find(names.begin(), names.end(), name) == names.end())
      throw UsageError("'" + name + "' is not a free variable of the formula");
  }
  sn::Env env;
  if (cfg.command == Command::Decide || cfg.command == Command::Oracle) {
    for (const std::string& n : names) {
      auto it = given.find(n);
      if (it == given.end()) throw UsageError("no value for free variable '" + n + "' (use --env " + n + "=VALUE)");
      env.push_back(it->second);
    }
  }
  return Prepared{std::move(names), std::move(env), std::move(f)};
}

int decide(const Config& cfg, const Prepared& in, const sn::Engine& engine, std::ostream& out) {
  const sn::Formula qf = engine.lift_qe(in.formula);
  const sn::Decision d = engine.decide(in.formula, in.env);
  const std::string qf_text = parser::pretty(qf, in.names);

  Json j;
  j["result"] = d.is_yes() ? "yes" : "no";
  std::vector<std::string> lines{d.is_yes() ? "yes" : "no"};

  if (cfg.evidence && d.is_yes()) {
    EvidencePath path;
    walk(d.evidence(), path);
    j["witnesses"] = path.witnesses;
    if (!path.witnesses.empty()) lines.push_back("witnesses: " + join(path.witnesses));
    if (path.universal) {
      j["universal"] = true;
      lines.push_back("universal: evidence for any value is available via --instantiate");
      Json instances = Json::array();
      for (Nat v : cfg.instantiate) {
        EvidencePath inst;
        walk(path.universal->instantiate(v), inst);
        instances.push_back(Json{{"value", v}, {"witnesses", inst.witnesses}});
        lines.push_back("instance " + std::to_string(v) + ": holds" +
                        (inst.witnesses.empty() ? "" : ", witnesses: " + join(inst.witnesses)));
      }
      if (!cfg.instantiate.empty()) j["instances"] = instances;
    }
  } else if (cfg.evidence) {
    if (auto v = counterexample(d.refutation())) {
      j["counterexample"] = *v;
      lines.push_back("counterexample: " + std::to_string(*v));
    }
  }
  j["qf_equivalent"] = qf_text;

  if (cfg.json) {
    out << j.dump() << '\n';
  } else {
    for (const std::string& l : lines) out << l << '\n';
  }
  return d.is_yes() ? kExitYes : kExitNo;
}

int eliminate(const Config& cfg, const Prepared& in, const sn::Engine& engine, std::ostream& out) {
  const std::string text = parser::pretty(engine.lift_qe(in.formula), in.names);
  if (cfg.json) {
    out << Json{{"qf_equivalent", text}}.dump() << '\n';
  } else {
    out << text << '\n';
  }
  return kExitYes;
}

int oracle(const Config& cfg, const Prepared& in, const sn::Engine& engine, std::ostream& out) {
  const bool expected = sn::oracle_decide(in.formula, in.env);
  const bool got = engine.decide(in.formula, in.env).is_yes();
  const bool agree = expected == got;
  if (cfg.json) {
    out << Json{{"result", expected ? "yes" : "no"}, {"decide", got ? "yes" : "no"}, {"agree", agree}}.dump() << '\n';
  } else {
    out << "oracle: " << (expected ? "yes" : "no") << '\n'
        << "decide: " << (got ? "yes" : "no") << '\n'
        << (agree ? "agree" : "DISAGREE") << '\n';
  }
  if (!agree) return kExitInconsistent;
  return expected ? kExitYes : kExitNo;
}

int split(const Config& cfg, const Prepared& in, const sn::Engine& engine, std::ostream& out) {
  if (in.names.size() != 1)
    throw UsageError("split needs exactly one free variable, found " + std::to_string(in.names.size()));
  const auto res = engine.forall_or_counterexample(in.formula, sn::Env{});
  if (const auto* c = std::get_if<qelim::Counterexample<sn::Theory>>(&res)) {
    if (cfg.json) {
      out << Json{{"result", "counterexample"}, {"variable", in.names.front()}, {"counterexample", c->value}}.dump()
          << '\n';
    } else {
      out << "counterexample: " << c->value << '\n';
    }
    return kExitNo;
  }
  if (cfg.json) {
    out << Json{{"result", "forall"}, {"variable", in.names.front()}}.dump() << '\n';
  } else {
    out << "forall: holds for all values\n";
  }
  return kExitYes;
}

}  // namespace

std::pair<std::string, Nat> parse_binding(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0 || eq + 1 == text.size())
    throw std::invalid_argument("expected NAME=VALUE, got '" + std::string(text) + "'");
  const std::string_view digits = text.substr(eq + 1);
  Nat value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size())
    throw std::invalid_argument("'" + std::string(digits) + "' is not a natural number");
  return {std::string(text.substr(0, eq)), value};
}

int run(const Config& cfg, std::ostream& out, std::ostream& err) {
  try {
    const Prepared in = prepare(cfg);
    const sn::Engine engine(sn::Step{}, cfg.max_products);
    switch (cfg.command) {
      case Command::Decide: return decide(cfg, in, engine, out);
      case Command::Eliminate: return eliminate(cfg, in, engine, out);
      case Command::Oracle: return oracle(cfg, in, engine, out);
      case Command::Split: return split(cfg, in, engine, out);
    }
    err << "error: unknown command\n";
    return kExitUsage;
  } catch (const parser::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DnfLimitExceeded& e) {
    err << "error: " << e.what() << "; raise --max-products to allow more\n";
    return kExitUsage;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInconsistent;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace qelim::cli
