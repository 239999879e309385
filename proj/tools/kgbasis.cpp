// kgbasis: command-line front end. Every run prints one JSON document
// {"manifest": ..., "result": ...} (or "error") on stdout.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "kgb/catalog.hpp"
#include "kgb/error.hpp"
#include "kgb/report.hpp"

using namespace kgb;

namespace {

struct Common {
  std::string group;
  std::vector<std::string> params;
  std::string field = "2";
  int workers = 1;
  std::string json_path;
  bool timing = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Params parse_params(const std::vector<std::string>& items) {
  Params out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got " + item);
    try {
      out[item.substr(0, eq)] = std::stoll(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("--param value must be an integer: " + item);
    }
  }
  return out;
}

Field parse_field(const std::string& spec) {
  int p = 0;
  int k = 1;
  char comma = 0;
  std::istringstream in(spec);
  in >> p;
  if (in >> comma) {
    if (comma != ',' || !(in >> k)) throw UsageError("--field expects p or p,k");
  }
  if (!in.eof() && in.fail()) throw UsageError("--field expects p or p,k");
  return Field::make(p, k);
}

void add_common(CLI::App* sub, Common& c, bool with_group) {
  if (with_group) {
    sub->add_option("--group", c.group, "catalog name or short spec such as Q8xC2");
    sub->add_option("--param", c.params, "family parameter key=value (repeatable)");
    sub->add_option("--field", c.field, "p or p,k for GF(p^k)");
  }
  sub->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--json", c.json_path, "also write the report to this path");
  sub->add_flag("--timing", c.timing, "record wall-clock seconds in the manifest");
}

Json manifest(const std::string& command, const Common& c, const Params& params) {
  Json m;
  m["schema"] = kSchema;
  m["version"] = kVersion;
  m["command"] = command;
  if (c.group.empty()) {
    m["group"] = nullptr;
  } else {
    Json g;
    g["name"] = c.group;
    for (const auto& [k, v] : params) g[k] = v;
    m["group"] = std::move(g);
  }
  return m;
}

std::shared_ptr<const AlgebraContext> context_for(const Common& c, const Params& params) {
  if (c.group.empty()) throw UsageError("--group is required");
  return make_context(parse_group_spec(c.group, params), parse_field(c.field));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kMalformedFile, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Filtered multiplicative bases of modular group algebras"};
  app.require_subcommand(1);

  Common c;
  std::string catalog_action = "list";
  std::string basis_path;
  std::string family;
  int mu = -1;
  int degree = 2;
  long long budget = 100000000;
  bool no_prefilter = false;
  std::string expect;

  auto* cat = app.add_subcommand("catalog", "list families or show one presentation");
  cat->add_option("action", catalog_action, "list or show")->check(CLI::IsMember({"list", "show"}));
  add_common(cat, c, true);
  auto* grp = app.add_subcommand("group", "structure of a group");
  add_common(grp, c, true);
  auto* jen = app.add_subcommand("jennings", "radical filtration and Jennings data");
  add_common(jen, c, true);
  auto* ver = app.add_subcommand("verify", "verify a basis file");
  add_common(ver, c, true);
  ver->add_option("--basis", basis_path, "basis file")->required();
  auto* con = app.add_subcommand("construct", "build a basis from a construction");
  add_common(con, c, true);
  con->add_option("--family", family, "abelian, g4, typeA or typeB")
      ->required()
      ->check(CLI::IsMember({"abelian", "g4", "typeA", "typeB"}));
  con->add_option("--mu", mu, "scalar index of mu; all scalars are tried when omitted");
  con->add_option("--basis", basis_path, "write the basis file here");
  auto* obs = app.add_subcommand("obstruct", "certify over all leading matrices");
  add_common(obs, c, true);
  obs->add_option("--degree", degree, "2 or 3")->check(CLI::IsMember({2, 3}));
  obs->add_option("--expect", expect, "OBSTRUCTED or INCONCLUSIVE; exit 1 on mismatch")
      ->check(CLI::IsMember({"OBSTRUCTED", "INCONCLUSIVE"}));
  auto* sea = app.add_subcommand("search", "exhaustive search for |G| <= 16");
  add_common(sea, c, true);
  sea->add_option("--budget", budget, "node budget")->check(CLI::PositiveNumber);
  sea->add_flag("--no-prefilter", no_prefilter, "try every invertible leading matrix");
  sea->add_option("--basis", basis_path, "write a found basis here");
  auto* mat = app.add_subcommand("matrix", "existence table at the smallest parameters");
  add_common(mat, c, false);

  const auto start = std::chrono::steady_clock::now();
  std::string command = "?";
  Params params;
  Json doc;
  int code = 0;
  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      throw UsageError(e.what());
    }
    CLI::App* sub = app.get_subcommands().front();
    command = sub->get_name();
    params = parse_params(c.params);
    Json m = manifest(command, c, params);
    Json result;
    std::string outcome;

    if (command == "catalog") {
      if (catalog_action == "list") {
        result = Json::array();
        for (const auto& e : catalog_entries()) {
          result.push_back({{"name", e.name}, {"params", e.params}, {"range", e.range},
                            {"relations", e.description}});
        }
        outcome = std::to_string(result.size()) + " families";
      } else {
        if (c.group.empty()) throw UsageError("catalog show needs --group");
        const PcPresentation pres = parse_group_spec(c.group, params);
        const ValidationReport v = validate(pres);
        result["label"] = pres.label;
        result["generators"] = pres.names;
        result["relative_orders"] = pres.orders;
        result["expected_order"] = v.expected_order;
        result["realized_order"] = v.realized_order;
        result["consistent"] = v.ok;
        result["failure"] = v.failure;
        outcome = v.ok ? "consistent" : "inconsistent";
        code = v.ok ? 0 : 1;
      }
    } else if (command == "group") {
      const auto ctx = context_for(c, params);
      result = group_json(ctx->alg.group());
      outcome = "order " + std::to_string(ctx->alg.dim());
    } else if (command == "jennings") {
      const auto ctx = context_for(c, params);
      m["field"] = field_json(ctx->alg.field());
      result = jennings_json(*ctx);
      outcome = ctx->jennings.series_agree() ? "series agree" : "series disagree";
      code = ctx->jennings.series_agree() ? 0 : 1;
    } else if (command == "verify") {
      const std::string text = read_file(basis_path);
      Common cc = c;
      Params pp = params;
      if (cc.group.empty()) {
        // take the group and field from the file
        const Json head = Json::parse(text, nullptr, false);
        if (head.is_discarded() || !head.contains("group") || !head.contains("field")) {
          throw Error(ErrorCode::kMalformedFile, "basis file lacks group or field");
        }
        cc.group = head["group"].value("name", "");
        if (head["group"].contains("params")) {
          for (const auto& [k, v] : head["group"]["params"].items()) pp[k] = v.get<long long>();
        }
        cc.field = std::to_string(head["field"].value("p", 0)) + "," +
                   std::to_string(head["field"].value("k", 1));
        m = manifest(command, cc, pp);
      }
      const auto ctx = context_for(cc, pp);
      m["field"] = field_json(ctx->alg.field());
      m["basis"] = basis_path;
      const BasisFile file = read_basis_json(*ctx, text);
      const Verdict v = verify(*ctx, file.elements);
      result = verdict_json(*ctx, v);
      outcome = v.pass ? "pass" : "fail";
      code = v.pass ? 0 : 1;
    } else if (command == "construct") {
      const auto ctx = context_for(c, params);
      m["field"] = field_json(ctx->alg.field());
      m["family"] = family;
      ConstructionResult r;
      Json sweep = nullptr;
      if (family == "abelian") {
        r = abelian_basis(*ctx);
      } else if (family == "g4") {
        r = g4_basis(*ctx);
      } else if (mu >= 0) {
        if (mu >= ctx->alg.field().q()) throw UsageError("--mu out of range");
        const Scalar s = static_cast<Scalar>(mu);
        r = family == "typeA" ? type_a_basis(*ctx, s) : type_b_basis(*ctx, s);
      } else {
        MuSweep sw = sweep_mu(*ctx, family);
        sweep = Json::array();
        for (Scalar s : sw.passing) sweep.push_back(static_cast<int>(s));
        r = sw.results.front();
        for (auto& x : sw.results) {
          if (x.ok) {
            r = std::move(x);
            break;
          }
        }
      }
      if (mu >= 0) m["mu"] = mu;
      result = construction_json(*ctx, r);
      if (!sweep.is_null()) result["passing_mu"] = std::move(sweep);
      if (!basis_path.empty()) {
        write_file(basis_path,
                   write_basis_json(*ctx, {c.group, params, ctx->alg.field().p(),
                                           ctx->alg.field().k(), r.basis}));
        m["basis"] = basis_path;
      }
      outcome = r.ok ? "pass" : "fail";
      code = r.ok ? 0 : 1;
    } else if (command == "obstruct") {
      const auto ctx = context_for(c, params);
      m["field"] = field_json(ctx->alg.field());
      m["degree"] = degree;
      const ObstructionReport r = certify(*ctx, degree, c.workers);
      result = obstruction_json(r);
      outcome = r.verdict;
      if (!expect.empty() && expect != r.verdict) code = 1;
    } else if (command == "search") {
      const auto ctx = context_for(c, params);
      m["field"] = field_json(ctx->alg.field());
      m["budget"] = budget;
      m["prefilter"] = !no_prefilter;
      const SearchReport r = full_search(*ctx, budget, c.workers, !no_prefilter);
      result = search_json(*ctx, r);
      if (r.basis && !basis_path.empty()) {
        write_file(basis_path, write_basis_json(*ctx, {c.group, params, ctx->alg.field().p(),
                                                       ctx->alg.field().k(), *r.basis}));
        m["basis"] = basis_path;
      }
      outcome = r.outcome;
      code = r.outcome == "found" ? 0 : 1;
    } else if (command == "matrix") {
      result = existence_matrix(c.workers);
      const int agree = result["summary"]["agree"].get<int>();
      const int rows = result["summary"]["rows"].get<int>();
      outcome = std::to_string(agree) + "/" + std::to_string(rows) + " rows agree";
      code = agree == rows ? 0 : 1;
    }
    m["outcome"] = outcome;
    if (c.timing) {
      m["wall_clock_s"] =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    doc["manifest"] = std::move(m);
    doc["result"] = std::move(result);
  } catch (const UsageError& e) {
    doc["manifest"] = {{"schema", kSchema}, {"version", kVersion}, {"command", command}};
    doc["error"] = {{"code", "USAGE"}, {"message", e.what()}};
    code = 2;
  } catch (const Error& e) {
    doc["manifest"] = manifest(command, c, params);
    doc["error"] = {{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}};
    code = 2;
  }
  const std::string text = doc.dump(2) + "\n";
  std::cout << text;
  if (!c.json_path.empty()) {
    std::ofstream out(c.json_path);
    out << text;
  }
  return code;
}
