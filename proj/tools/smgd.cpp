// smgd: command line front end for the smgd library.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "smgd/biquandle.hpp"
#include "smgd/classical.hpp"
#include "smgd/coloring.hpp"
#include "smgd/fpgroup.hpp"
#include "smgd/moves.hpp"
#include "smgd/reproduce.hpp"
#include "smgd/resolution.hpp"

#ifndef SMGD_DEFAULT_CORPUS
#define SMGD_DEFAULT_CORPUS "corpus"
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace smgd;

namespace {

struct Session {
  bool json_out = false;
  bool timing = false;
  std::uint64_t seed = 1;
  int budget = SimplifyOptions{}.budget;
  std::string corpus_flag;
  std::string command;
  std::map<std::string, std::string> inputs;
  int exit_code = 0;

  fs::path corpus() const {
    if (!corpus_flag.empty()) return corpus_flag;
    if (const char* env = std::getenv("SMGD_CORPUS")) return env;
    return SMGD_DEFAULT_CORPUS;
  }

  // A path that does not exist is looked up in the corpus directory.
  std::string load(const std::string& path) {
    fs::path p = path;
    if (!fs::exists(p) && fs::exists(corpus() / p)) p = corpus() / p;
    const std::string text = read_file(p);
    inputs[path] = fnv1a_hex(text);
    return text;
  }

  Diagram diagram(const std::string& path) { return parse_smgd(load(path)); }

  FiniteBiquandle biquandle(const std::string& path) {
    const std::string text = load(path);
    try {
      return biquandle_from_json(json::parse(text));
    } catch (const json::exception& e) {
      throw BiquandleError(path + ": " + e.what());
    }
  }

  SimplifyOptions simplify_options() const {
    SimplifyOptions o;
    o.budget = budget;
    return o;
  }

  void emit(const json& result, const std::string& text, double seconds) const {
    if (!json_out) {
      std::cout << text;
      if (!text.empty() && text.back() != '\n') std::cout << '\n';
      return;
    }
    json r{{"command", command}, {"seed", seed}, {"inputs", inputs}, {"results", result}};
    if (timing) r["timing"] = {{"seconds", seconds}};
    std::cout << r.dump(2) << '\n';
  }
};

json polynomial_json(const Laurent& p) {
  json a = json::array();
  for (const auto& [e, c] : p.terms()) a.push_back({e, c});
  return a;
}

json unlink_json(const UnlinkCertificate& c) {
  json j{{"certificate", c.to_string()}};
  if (c.kind == UnlinkCertificate::Kind::Unlink) j["components"] = c.components;
  else j["reason"] = c.reason;
  return j;
}

json site_json(const MoveSite& s) {
  json anchor = json::array();
  for (const auto& [p, h] : s.match.anchor) anchor.push_back({p, h});
  return {{"kind", s.kind.tag},      {"forward", s.kind.forward}, {"pattern", s.pattern},
          {"anchor", anchor},        {"boundary", s.boundary}};
}

MoveSite site_from_json(const json& j) {
  try {
    MoveSite s;
    s.kind = {j.at("kind").get<std::string>(), j.value("forward", true)};
    s.pattern = j.at("pattern").get<int>();
    for (const auto& a : j.at("anchor")) s.match.anchor.push_back({a.at(0).get<int>(), a.at(1).get<int>()});
    if (j.contains("boundary")) s.boundary = j.at("boundary").get<std::vector<EdgeId>>();
    return s;
  } catch (const json::exception& e) {
    throw StaleSite(std::string("malformed site: ") + e.what());
  }
}

MoveKind parse_kind(const std::string& text) {
  MoveKind k{text, true};
  for (const std::string suffix : {":backward", ":forward"})
    if (text.size() > suffix.size() && text.ends_with(suffix)) {
      k.tag = text.substr(0, text.size() - suffix.size());
      k.forward = suffix == ":forward";
    }
  const auto tags = all_tags();
  if (std::find(tags.begin(), tags.end(), k.tag) == tags.end()) throw StaleSite("unknown move kind " + k.tag);
  return k;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

const char* op_name(Op op) {
  switch (op) {
    case Op::Same: return "same";
    case Op::Underline: return "utr";
    case Op::Overline: return "otr";
  }
  return "?";
}

bool is_quandle_text(const std::string& text) {
  std::stringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    line = detail::strip_comment(line);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (first) {
      first = false;
      continue;
    }
    if (line.find('*') != std::string::npos || line.find('/') != std::string::npos) return true;
  }
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  Session s;
  s.command = "smgd";
  for (int i = 1; i < argc; ++i) s.command += " " + std::string(argv[i]);

  CLI::App app{"Singular marked graph diagrams, biquandle colorings and quandle groups"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_flag("--json", s.json_out, "Machine readable output");
  app.add_flag("--timing", s.timing, "Include wall time in JSON output");
  app.add_option("--seed", s.seed, "Seed for randomized commands");
  app.add_option("--budget", s.budget, "Move budget for simplification")->check(CLI::PositiveNumber);
  app.add_option("--corpus", s.corpus_flag, "Corpus directory (default: $SMGD_CORPUS)");

  std::function<std::pair<json, std::string>()> run;
  std::string file, side = "lower", kind, site, allowed, mode = "biquandle", as = "core";
  int steps = 10, n = 3, t = 1, sv = 1, k = 1, cls = 2, m = 1, max_list = 1000;
  bool core = false, quandle = false, simplified = false;
  std::vector<int> only;

  auto* resolve_cmd = app.add_subcommand("resolve", "Lower or upper resolution");
  resolve_cmd->add_option("file", file, "Diagram")->required();
  resolve_cmd->add_option("--side", side, "lower or upper")->check(CLI::IsMember({"lower", "upper"}));
  resolve_cmd->callback([&] {
    run = [&] {
      const Diagram r = resolve(s.diagram(file), side == "lower" ? Side::Lower : Side::Upper);
      const std::string text = serialize_smgd(r);
      return std::pair{json{{"side", side}, {"smgd", text}}, text};
    };
  });

  auto* admissible_cmd = app.add_subcommand("admissible", "Certify that both resolutions are unlinks");
  admissible_cmd->add_option("file", file, "Diagram")->required();
  admissible_cmd->callback([&] {
    run = [&] {
      const auto c = is_admissible(s.diagram(file), s.simplify_options());
      json j{{"certificate", c.to_string()}, {"lower", unlink_json(c.lower)}, {"upper", unlink_json(c.upper)}};
      return std::pair{j, c.to_string() + "\nlower: " + c.lower.to_string() + "\nupper: " + c.upper.to_string()};
    };
  });

  auto* lstar_cmd = app.add_subcommand("lstar", "Orientation-determined smoothing L*");
  lstar_cmd->add_option("file", file, "Diagram")->required();
  lstar_cmd->callback([&] {
    run = [&] {
      const std::string text = serialize_smgd(l_star(s.diagram(file)));
      return std::pair{json{{"smgd", text}}, text};
    };
  });

  auto* alexander_cmd = app.add_subcommand("alexander", "Alexander polynomial of a classical diagram");
  alexander_cmd->add_option("file", file, "Diagram")->required();
  alexander_cmd->callback([&] {
    run = [&] {
      const Laurent p = alexander_polynomial(s.diagram(file)).normalized();
      return std::pair{json{{"polynomial", polynomial_json(p)}}, p.to_string()};
    };
  });

  auto* bracket_cmd = app.add_subcommand("bracket", "Kauffman bracket of a classical diagram");
  bracket_cmd->add_option("file", file, "Diagram")->required();
  bracket_cmd->callback([&] {
    run = [&] {
      const Laurent p = kauffman_bracket(s.diagram(file));
      return std::pair{json{{"polynomial", polynomial_json(p)}}, p.to_string("A")};
    };
  });

  auto* unlink_cmd = app.add_subcommand("unlink", "Certify a classical diagram as an unlink");
  unlink_cmd->add_option("file", file, "Diagram")->required();
  unlink_cmd->callback([&] {
    run = [&] {
      const auto c = certify_unlink(s.diagram(file), s.simplify_options());
      return std::pair{unlink_json(c), c.to_string()};
    };
  });

  auto* bq = app.add_subcommand("bq", "Finite biquandles");
  bq->require_subcommand(1);
  auto* bq_check = bq->add_subcommand("check", "Check the biquandle axioms");
  bq_check->add_option("file", file, "Biquandle JSON")->required();
  bq_check->callback([&] {
    run = [&] {
      const auto j = json::parse(s.load(file));
      const auto [u, o] = tables_from_json(j);
      const Verdict v = check_axioms(u, o);
      if (!v.valid()) s.exit_code = 1;
      const std::string text = v.valid() ? "valid" : "invalid: " + v.violation->to_string();
      json r{{"valid", v.valid()}};
      if (!v.valid()) r["violation"] = {{"axiom", v.violation->axiom}, {"witness", v.violation->witness}};
      return std::pair{r, text};
    };
  });
  auto* bq_alex = bq->add_subcommand("alexander", "Alexander biquandle on Z/n");
  bq_alex->add_option("--n", n, "Modulus")->required();
  bq_alex->add_option("--t", t, "Unit t")->required();
  bq_alex->add_option("--s", sv, "Unit s")->required();
  bq_alex->callback([&] {
    run = [&] {
      const json j = to_json(alexander_biquandle(n, t, sv));
      return std::pair{j, j.dump()};
    };
  });

  auto* colorings = app.add_subcommand("colorings", "Biquandle colorings");
  colorings->require_subcommand(1);
  std::string biquandle_file;
  auto* col_count = colorings->add_subcommand("count", "Number of colorings");
  auto* col_list = colorings->add_subcommand("list", "All colorings, one per line");
  for (auto* c : {col_count, col_list}) {
    c->add_option("diagram", file, "Diagram")->required();
    c->add_option("--biquandle", biquandle_file, "Biquandle JSON")->required();
  }
  col_list->add_option("--max", max_list, "Maximum number of colorings");
  col_count->callback([&] {
    run = [&] {
      const auto c = count_colorings(s.diagram(file), s.biquandle(biquandle_file));
      return std::pair{json{{"count", c}}, std::to_string(c)};
    };
  });
  col_list->callback([&] {
    run = [&] {
      ColoringOptions o;
      o.max_colorings = static_cast<std::uint64_t>(max_list);
      const Diagram d = s.diagram(file);
      const auto cs = enumerate_colorings(d, s.biquandle(biquandle_file), o);
      json a = json::array();
      std::string text;
      for (const auto& c : cs) {
        const std::vector<int> v(c.color.begin() + 1, c.color.end());
        a.push_back(v);
        for (std::size_t i = 0; i < v.size(); ++i) text += (i ? " " : "") + std::to_string(v[i]);
        text += "\n";
      }
      return std::pair{json{{"count", cs.size()}, {"colorings", a}}, text.empty() ? "none" : text};
    };
  });

  auto* presentation = app.add_subcommand("presentation", "Fundamental biquandle or quandle presentation");
  presentation->add_option("diagram", file, "Diagram")->required();
  presentation->add_option("--mode", mode, "biquandle or quandle")->check(CLI::IsMember({"biquandle", "quandle"}));
  presentation->callback([&] {
    run = [&] {
      const auto p = fundamental_presentation(
          s.diagram(file), mode == "quandle" ? PresentationMode::Quandle : PresentationMode::Biquandle);
      json rels = json::array();
      for (const auto& r : p.relations)
        rels.push_back({{"target", p.generators[r.target]},
                        {"op", op_name(r.op)},
                        {"a", p.generators[r.a]},
                        {"b", p.generators[r.b]}});
      return std::pair{json{{"mode", mode}, {"generators", p.generators}, {"relations", rels}}, p.to_string()};
    };
  });

  auto* moves = app.add_subcommand("moves", "Move sites, application and random walks");
  moves->require_subcommand(1);
  auto* moves_list = moves->add_subcommand("list", "Sites of a move kind (TAG or TAG:backward)");
  moves_list->add_option("diagram", file, "Diagram")->required();
  moves_list->add_option("--kind", kind, "Move kind")->required();
  moves_list->callback([&] {
    run = [&] {
      const auto sites = find_sites(s.diagram(file), parse_kind(kind));
      json a = json::array();
      std::string text;
      for (const auto& site : sites) {
        a.push_back(site_json(site));
        text += site_json(site).dump() + "\n";
      }
      return std::pair{json{{"sites", a}}, text.empty() ? "no sites" : text};
    };
  });
  auto* moves_apply = moves->add_subcommand("apply", "Apply a site produced by moves list");
  moves_apply->add_option("diagram", file, "Diagram")->required();
  moves_apply->add_option("--site", site, "Site JSON")->required();
  moves_apply->callback([&] {
    run = [&] {
      const json j = json::parse(site, nullptr, false);
      if (j.is_discarded()) throw StaleSite("site is not valid JSON");
      const std::string text = serialize_smgd(apply(s.diagram(file), site_from_json(j)));
      return std::pair{json{{"smgd", text}}, text};
    };
  });
  auto* moves_walk = moves->add_subcommand("walk", "Seeded random walk");
  moves_walk->add_option("diagram", file, "Diagram")->required();
  moves_walk->add_option("--allowed", allowed, "Comma separated tags (default: all)");
  moves_walk->add_option("--steps", steps, "Number of steps")->check(CLI::NonNegativeNumber);
  moves_walk->callback([&] {
    run = [&] {
      std::vector<std::string> tags = allowed.empty() ? all_tags() : split_list(allowed);
      for (const auto& tg : tags) parse_kind(tg);
      json trace = json::array();
      const Diagram end = random_walk(s.diagram(file), tags, steps, s.seed,
                                      [&](int step, const MoveSite& site, const Diagram&) {
                                        trace.push_back({{"step", step}, {"move", to_string(site.kind)}});
                                      });
      const std::string text = serialize_smgd(end);
      return std::pair{json{{"trace", trace}, {"smgd", text}}, text};
    };
  });

  auto* rk = app.add_subcommand("rk", "Quandle presentation of R_k and its groups");
  rk->add_option("--k", k, "k >= 1")->required()->check(CLI::PositiveNumber);
  auto* core_flag = rk->add_flag("--core", core, "Core group of the quandle");
  rk->add_flag("--quandle", quandle, "Quandle presentation (default)")->excludes(core_flag);
  rk->add_flag("--simplified", simplified, "Simplified core presentation")->excludes(core_flag);
  rk->callback([&] {
    run = [&] {
      std::string text;
      if (simplified) text = simplified_core_rk(k).to_string();
      else if (core) text = core_group(rk_quandle(k)).to_string();
      else text = rk_quandle(k).to_string();
      return std::pair{json{{"k", k}, {"presentation", text}}, text};
    };
  });

  auto load_group = [&](const std::string& path) {
    const std::string text = s.load(path);
    if (!is_quandle_text(text)) return parse_group_presentation(text);
    const auto q = parse_quandle_presentation(text);
    return as == "associated" ? associated_group(q) : core_group(q);
  };
  auto invariants_json = [](const AbelianInvariants& a) {
    return json{{"invariants", a.to_string()}, {"free_rank", a.free_rank}, {"torsion", a.torsion}};
  };

  auto* abel = app.add_subcommand("abelianize", "Abelian invariants of a presentation");
  abel->add_option("presentation", file, "Group or quandle presentation")->required();
  abel->add_option("--group", as, "core or associated (quandle input)")->check(CLI::IsMember({"core", "associated"}));
  abel->callback([&] {
    run = [&] {
      const auto a = abelianization(load_group(file));
      return std::pair{invariants_json(a), a.to_string()};
    };
  });

  auto* nq = app.add_subcommand("nq", "Lower central factors of a presentation");
  nq->add_option("presentation", file, "Group or quandle presentation")->required();
  nq->add_option("--class", cls, "Nilpotency class")->check(CLI::Range(1, kMaxNilpotentClass));
  nq->add_option("--group", as, "core or associated (quandle input)")->check(CLI::IsMember({"core", "associated"}));
  nq->callback([&] {
    run = [&] {
      const auto q = nilpotent_quotient(load_group(file), cls);
      json f = json::array();
      for (const auto& a : q.factors) f.push_back(invariants_json(a));
      return std::pair{json{{"class", q.cls}, {"factors", f}}, q.to_string()};
    };
  });

  auto* dist = app.add_subcommand("distinguish", "Compare the core groups of R_n and R_m");
  dist->add_option("--n", n, "n >= 1")->required()->check(CLI::PositiveNumber);
  dist->add_option("--m", m, "m >= 1")->required()->check(CLI::PositiveNumber);
  dist->callback([&] {
    run = [&] {
      const auto r = distinguish_rk(n, m);
      return std::pair{json{{"report", r.to_string()}, {"distinguished", r.distinguished}}, r.to_string()};
    };
  });

  auto* repro = app.add_subcommand("reproduce", "Run the acceptance table over the corpus");
  repro->add_option("--only", only, "Criterion ids");
  repro->callback([&] {
    run = [&] {
      AcceptanceOptions o;
      o.seed = s.seed;
      o.only.insert(only.begin(), only.end());
      const auto rep = run_acceptance(s.corpus(), o);
      for (const auto& [name, hash] : rep.inputs) s.inputs[name] = hash;
      if (!rep.all_pass()) s.exit_code = 1;
      json a = json::array();
      std::string text;
      for (const auto& r : rep.results) {
        json e{{"id", r.id}, {"claim", r.claim}, {"pass", r.pass}, {"detail", r.detail}};
        if (s.timing) e["seconds"] = r.seconds;
        a.push_back(e);
        text += format_line(r) + "\n";
      }
      return std::pair{json{{"criteria", a}, {"all_pass", rep.all_pass()}}, text};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const auto t0 = std::chrono::steady_clock::now();
    const auto [result, text] = run();
    s.emit(result, text, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return s.exit_code;
  } catch (const std::exception& e) {
    if (s.json_out) std::cout << json{{"command", s.command}, {"error", e.what()}}.dump(2) << '\n';
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
