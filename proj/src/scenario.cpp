#include "contractlab/scenario.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "contractlab/csv.hpp"

namespace contractlab {

namespace {

struct RawValue {
  std::string text;
  int line = 0;
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

const char* const kKnownKeys[] = {
    "r",           "c",         "k",           "b",          "lambda",
    "delta",       "reservation", "demand.kind", "demand.n",   "contract.kind",
    "contract.w",  "contract.rho", "contract.rho1", "contract.mode", "contract.R",
    "directive",   "sim.seed",  "sim.replications", "sim.horizon_cap"};

bool known_key(const std::string& key) {
  for (const char* k : kKnownKeys)
    if (key == k) return true;
  return false;
}

double to_double(const std::string& key, const RawValue& v) {
  const char* begin = v.text.c_str();
  char* end = nullptr;
  const double out = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw ParseError("value of '" + key + "' is not a number: '" + v.text + "'", v.line);
  return out;
}

long long to_int(const std::string& key, const RawValue& v) {
  const char* begin = v.text.c_str();
  char* end = nullptr;
  const long long out = std::strtoll(begin, &end, 10);
  if (end == begin || *end != '\0')
    throw ParseError("value of '" + key + "' is not an integer: '" + v.text + "'", v.line);
  return out;
}

}  // namespace

Scenario parse_scenario_text(const std::string& text) {
  std::map<std::string, RawValue> kv;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'key = value', got '" + line + "'", lineno);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("missing key before '='", lineno);
    if (value.empty()) throw ParseError("missing value for '" + key + "'", lineno);
    if (!known_key(key)) throw ParseError("unknown key '" + key + "'", lineno);
    if (kv.count(key)) throw ParseError("duplicate key '" + key + "'", lineno);
    kv[key] = {value, lineno};
  }

  auto take = [&](const char* key) -> std::optional<RawValue> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    RawValue v = it->second;
    kv.erase(it);
    return v;
  };
  auto need_double = [&](const char* key) {
    auto v = take(key);
    if (!v) throw ParseError(std::string("missing required key '") + key + "'");
    return to_double(key, *v);
  };

  Scenario s;
  s.market.r = need_double("r");
  s.market.c = need_double("c");
  s.market.k = need_double("k");
  s.market.b = need_double("b");
  s.market.lambda = need_double("lambda");
  if (auto v = take("delta")) s.market.delta = to_double("delta", *v);
  if (auto v = take("reservation")) s.market.reservation = to_double("reservation", *v);

  std::string demand_kind = "exponential";
  if (auto v = take("demand.kind")) demand_kind = v->text;
  int shape = 1;
  if (auto v = take("demand.n")) shape = static_cast<int>(to_int("demand.n", *v));
  if (demand_kind == "exponential") {
    if (shape != 1)
      throw ParseError("demand.n must be 1 (or omitted) for an exponential tail");
    s.demand = DemandModel::exponential(s.market.b, s.market.lambda);
  } else if (demand_kind == "erlang") {
    s.demand = DemandModel::erlang(s.market.b, s.market.lambda, shape);
  } else {
    throw ParseError("demand.kind must be 'exponential' or 'erlang', got '" + demand_kind + "'");
  }

  if (auto kind = take("contract.kind")) {
    auto need_field = [&](const char* key) {
      auto v = take(key);
      if (!v)
        throw ParseError("contract.kind = " + kind->text + " requires '" + std::string(key) + "'",
                         kind->line);
      return to_double(key, *v);
    };
    if (kind->text == "wholesale") {
      s.contract = Wholesale{need_field("contract.w")};
    } else if (kind->text == "lump_sum") {
      const double w = need_field("contract.w");
      s.contract = LumpSumPenalty{w, need_field("contract.rho")};
    } else if (kind->text == "unit_penalty") {
      const double w = need_field("contract.w");
      s.contract = UnitPenalty{w, need_field("contract.rho1")};
    } else if (kind->text == "renewal") {
      Renewal ren;
      ren.w = need_field("contract.w");
      std::string mode = "endogenous";
      if (auto v = take("contract.mode")) mode = v->text;
      if (mode == "endogenous") {
        ren.mode = Endogenous{};
      } else if (mode == "exogenous") {
        ren.mode = ExogenousProb{need_field("contract.R")};
      } else {
        throw ParseError("contract.mode must be 'exogenous' or 'endogenous', got '" + mode + "'");
      }
      s.contract = ren;
    } else {
      throw ParseError("unknown contract.kind '" + kind->text + "'", kind->line);
    }
  }

  if (auto v = take("directive")) {
    if (v->text == "coordinate") s.directive = Directive::Coordinate;
    else if (v->text == "optimize") s.directive = Directive::Optimize;
    else throw ParseError("directive must be 'coordinate' or 'optimize', got '" + v->text + "'",
                          v->line);
  }

  if (auto v = take("sim.seed"))
    s.sim.seed = static_cast<std::uint64_t>(to_int("sim.seed", *v));
  if (auto v = take("sim.replications")) {
    s.sim.replications = static_cast<long>(to_int("sim.replications", *v));
    if (s.sim.replications < 1) throw ParseError("sim.replications must be >= 1", v->line);
  }
  if (auto v = take("sim.horizon_cap")) {
    s.sim.horizon_cap = static_cast<int>(to_int("sim.horizon_cap", *v));
    if (s.sim.horizon_cap < 0) throw ParseError("sim.horizon_cap must be >= 0", v->line);
  }

  if (!kv.empty()) {
    const auto& stray = *kv.begin();
    throw ParseError("key '" + stray.first + "' is not valid in this configuration",
                     stray.second.line);
  }
  return s;
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open scenario file " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_scenario_text(buf.str());
}

std::string render_scenario(const Scenario& s) {
  std::ostringstream os;
  auto put = [&](const char* key, const std::string& value) { os << key << " = " << value << "\n"; };
  auto putd = [&](const char* key, double v) { put(key, format_cell(v)); };
  putd("r", s.market.r);
  putd("c", s.market.c);
  putd("k", s.market.k);
  putd("b", s.market.b);
  putd("lambda", s.market.lambda);
  if (s.market.delta) putd("delta", *s.market.delta);
  if (s.market.reservation != 0.0) putd("reservation", s.market.reservation);
  put("demand.kind", s.demand.kind == TailKind::Exponential ? "exponential" : "erlang");
  if (s.demand.kind == TailKind::Erlang) put("demand.n", std::to_string(s.demand.n));
  if (s.contract) {
    if (const auto* w = std::get_if<Wholesale>(&*s.contract)) {
      put("contract.kind", "wholesale");
      putd("contract.w", w->w);
    } else if (const auto* l = std::get_if<LumpSumPenalty>(&*s.contract)) {
      put("contract.kind", "lump_sum");
      putd("contract.w", l->w);
      putd("contract.rho", l->rho);
    } else if (const auto* u = std::get_if<UnitPenalty>(&*s.contract)) {
      put("contract.kind", "unit_penalty");
      putd("contract.w", u->w);
      putd("contract.rho1", u->rho1);
    } else if (const auto* ren = std::get_if<Renewal>(&*s.contract)) {
      put("contract.kind", "renewal");
      putd("contract.w", ren->w);
      if (const auto* ex = std::get_if<ExogenousProb>(&ren->mode)) {
        put("contract.mode", "exogenous");
        putd("contract.R", ex->R);
      } else {
        put("contract.mode", "endogenous");
      }
    }
  }
  if (s.directive == Directive::Coordinate) put("directive", "coordinate");
  if (s.directive == Directive::Optimize) put("directive", "optimize");
  if (s.sim.seed != 0) put("sim.seed", std::to_string(s.sim.seed));
  if (s.sim.replications != SimConfig{}.replications)
    put("sim.replications", std::to_string(s.sim.replications));
  if (s.sim.horizon_cap != 0) put("sim.horizon_cap", std::to_string(s.sim.horizon_cap));
  return os.str();
}

}  // namespace contractlab
