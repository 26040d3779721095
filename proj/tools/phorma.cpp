// Command-line surface over the phorma library: compile a spec into an index
// image, then count, rank, unrank, step, sample, enumerate, and inspect it.
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "phorma/phorma.hpp"

namespace {

using nlohmann::json;
using namespace phorma;

// Usage-level failures (malformed command-line values) exit with 2;
// domain and file failures exit with 1.
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Seq parse_alpha(const std::string& text) {
  try {
    return parse_seq(text);
  } catch (const parse_error& e) {
    throw usage_error("bad --alpha value '" + text + "': " + e.what());
  }
}

PhormaSpec spec_from(const std::string& path, const std::string& builtin) {
  if (path.empty() == builtin.empty())
    throw usage_error("give exactly one of a spec file or --builtin");
  return builtin.empty() ? load_spec(path) : builtin_spec(builtin);
}

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

json seq_json(const Seq& s) { return json(std::vector<Val>(s.begin(), s.end())); }

json stats_json(const IndexStats& s) {
  json j;
  j["v_g"] = s.v_g;
  j["v_h"] = s.v_h;
  j["reduced"] = s.red_count;
  j["total"] = s.total;
  j["roofs"] = s.roof_count;
  j["max_roofs"] = s.max_roof_count;
  j["lambda"] = s.lambda;
  j["nu"] = s.nu;
  j["mu"] = s.mu;
  j["density"] = s.density;
  j["density_1e4"] = std::llround(s.density * 10000.0);
  return j;
}

std::string table_row(const IndexStats& s) {
  return std::to_string(s.v_g) + " " + std::to_string(s.v_h) + " " +
         std::to_string(s.red_count) + " " + std::to_string(s.total) + " " +
         std::to_string(s.roof_count) + " " + std::to_string(s.max_roof_count) + " " +
         std::to_string(s.lambda) + " " + fixed4(s.mu) + " " +
         std::to_string(std::llround(s.density * 10000.0));
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phorma: compact rank/unrank indexes over restricted bounded sequences"};
  app.require_subcommand(1);

  // compile
  auto* compile = app.add_subcommand("compile", "compile a spec into an index image");
  std::string c_spec, c_builtin, c_out;
  bool c_json = false;
  compile->add_option("spec", c_spec, "spec file (.phorma)");
  compile->add_option("--builtin", c_builtin, "built-in spec (sym_ge:n:a, sym_gt:n:a, L:p:q, Tz:a1:..:a7)");
  compile->add_option("-o,--output", c_out, "output index image (.phx)")->required();
  compile->add_flag("--json", c_json, "machine-readable summary");

  // count
  auto* count = app.add_subcommand("count", "print the number of members");
  std::string n_file;
  bool n_json = false;
  count->add_option("index", n_file, "index image (.phx)")->required();
  count->add_flag("--json", n_json, "machine-readable output");

  // rank
  auto* rank = app.add_subcommand("rank", "print the rank of a member");
  std::string r_file, r_alpha;
  bool r_json = false;
  rank->add_option("index", r_file, "index image (.phx)")->required();
  rank->add_option("--alpha", r_alpha, "comma-separated member")->required();
  rank->add_flag("--json", r_json, "machine-readable output");

  // unrank
  auto* unrank = app.add_subcommand("unrank", "print the member at a rank");
  std::string u_file;
  std::uint64_t u_rank = 0;
  bool u_json = false;
  unrank->add_option("index", u_file, "index image (.phx)")->required();
  unrank->add_option("--rank", u_rank, "rank in [0, total)")->required();
  unrank->add_flag("--json", u_json, "machine-readable output");

  // next
  auto* next = app.add_subcommand("next", "print the successor of a member");
  std::string x_file, x_alpha;
  bool x_json = false;
  next->add_option("index", x_file, "index image (.phx)")->required();
  next->add_option("--alpha", x_alpha, "comma-separated member")->required();
  next->add_flag("--json", x_json, "machine-readable output");

  // sample
  auto* sample = app.add_subcommand("sample", "draw uniform members");
  std::string m_file;
  std::uint64_t m_seed = 0, m_count = 1;
  bool m_json = false;
  sample->add_option("index", m_file, "index image (.phx)")->required();
  sample->add_option("--seed", m_seed, "RNG seed (default 0)");
  sample->add_option("--count", m_count, "number of draws (default 1)");
  sample->add_flag("--json", m_json, "machine-readable output");

  // enum
  auto* enumerate = app.add_subcommand("enum", "stream members in rank order");
  std::string e_file;
  std::uint64_t e_from = 0, e_to = 0;
  bool e_json = false;
  enumerate->add_option("index", e_file, "index image (.phx)")->required();
  auto* e_from_opt = enumerate->add_option("--from", e_from, "first rank (default 0)");
  auto* e_to_opt =
      enumerate->add_option("--to", e_to, "last rank, inclusive (default total-1)");
  enumerate->add_flag("--json", e_json, "machine-readable output");

  // stats
  auto* stats = app.add_subcommand("stats", "print index statistics");
  std::string s_file;
  bool s_table = false, s_json = false;
  stats->add_option("index", s_file, "index image (.phx)")->required();
  stats->add_flag("--table", s_table, "single whitespace-separated row");
  stats->add_flag("--json", s_json, "machine-readable output");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "cross-check an index against exhaustive enumeration");
  std::string v_spec, v_builtin;
  std::uint64_t v_budget = 100000000ull;
  bool v_json = false;
  verify_cmd->add_option("spec", v_spec, "spec file (.phorma)");
  verify_cmd->add_option("--builtin", v_builtin, "built-in spec");
  verify_cmd->add_option("--budget", v_budget, "candidate-space ceiling (default 1e8)");
  verify_cmd->add_flag("--json", v_json, "machine-readable output");

  try {
    app.parse(argc, argv);

    if (*compile) {
      const PhormaSpec spec = spec_from(c_spec, c_builtin);
      const PhormaIndex idx = PhormaIndex::compile(spec);
      save_index_file(idx, c_out);
      if (c_json) {
        json j;
        j["output"] = c_out;
        j["total"] = idx.count();
        j["stats"] = stats_json(idx.stats());
        emit(j);
      } else {
        std::cerr << "wrote " << c_out << ": " << idx.count() << " members\n";
      }
    } else if (*count) {
      const PhormaIndex idx = load_index_file(n_file);
      if (n_json)
        emit(json{{"count", idx.count()}});
      else
        std::cout << idx.count() << "\n";
    } else if (*rank) {
      const PhormaIndex idx = load_index_file(r_file);
      const std::uint64_t r = idx.rank(parse_alpha(r_alpha));
      if (r_json)
        emit(json{{"rank", r}});
      else
        std::cout << r << "\n";
    } else if (*unrank) {
      const PhormaIndex idx = load_index_file(u_file);
      const Seq alpha = idx.unrank(u_rank);
      if (u_json)
        emit(json{{"alpha", seq_json(alpha)}});
      else
        std::cout << format_seq(alpha) << "\n";
    } else if (*next) {
      const PhormaIndex idx = load_index_file(x_file);
      const std::optional<Seq> nx = idx.next(parse_alpha(x_alpha));
      if (x_json) {
        emit(json{{"next", nx ? seq_json(*nx) : json(nullptr)}});
      } else if (nx) {
        std::cout << format_seq(*nx) << "\n";
      } else {
        std::cerr << "no successor: " << x_alpha << " is the last member\n";
        return 1;
      }
    } else if (*sample) {
      const PhormaIndex idx = load_index_file(m_file);
      std::mt19937_64 rng(m_seed);
      json draws = json::array();
      for (std::uint64_t i = 0; i < m_count; ++i) {
        const Seq alpha = idx.sample(rng);
        if (m_json)
          draws.push_back(seq_json(alpha));
        else
          std::cout << format_seq(alpha) << "\n";
      }
      if (m_json) emit(json{{"seed", m_seed}, {"samples", draws}});
    } else if (*enumerate) {
      const PhormaIndex idx = load_index_file(e_file);
      const bool has_from = e_from_opt->count() > 0;
      const bool has_to = e_to_opt->count() > 0;
      if (idx.count() == 0) {
        if (has_from || has_to) throw domain_error("enum range on an empty family");
        if (e_json) emit(json{{"from", 0}, {"to", 0}, {"alphas", json::array()}});
        return 0;
      }
      const std::uint64_t from = has_from ? e_from : 0;
      const std::uint64_t to = has_to ? e_to : idx.count() - 1;
      if (from > to) throw usage_error("--from exceeds --to");
      if (to >= idx.count())
        throw domain_error("rank " + std::to_string(to) + " out of range [0, " +
                           std::to_string(idx.count()) + ")");
      json alphas = json::array();
      for (std::uint64_t r = from; r <= to; ++r) {
        const Seq alpha = idx.unrank(r);
        if (e_json)
          alphas.push_back(seq_json(alpha));
        else
          std::cout << format_seq(alpha) << "\n";
      }
      if (e_json) emit(json{{"from", from}, {"to", to}, {"alphas", alphas}});
    } else if (*stats) {
      const IndexStats st = load_index_file(s_file).stats();
      if (s_json) {
        emit(stats_json(st));
      } else if (s_table) {
        std::cout << table_row(st) << "\n";
      } else {
        std::cout << "v_g " << st.v_g << "\n"
                  << "v_h " << st.v_h << "\n"
                  << "reduced " << st.red_count << "\n"
                  << "total " << st.total << "\n"
                  << "roofs " << st.roof_count << "\n"
                  << "max_roofs " << st.max_roof_count << "\n"
                  << "lambda " << st.lambda << "\n"
                  << "nu " << st.nu << "\n"
                  << "mu " << fixed4(st.mu) << "\n"
                  << "density_1e4 " << std::llround(st.density * 10000.0) << "\n";
      }
    } else if (*verify_cmd) {
      const PhormaSpec spec = spec_from(v_spec, v_builtin);
      const std::uint64_t cand = brute_candidates(spec);
      if (!v_json) std::cout << "candidates " << cand << "\n";
      const PhormaIndex idx = PhormaIndex::compile(spec);
      const OracleReport rep =
          verify(spec, idx, v_budget, v_spec.empty() ? v_builtin : v_spec);
      if (v_json) {
        json j;
        j["candidates"] = cand;
        j["spec"] = rep.spec_id;
        j["brute_count"] = rep.brute_count;
        j["index_count"] = rep.index_count;
        j["set_equal"] = rep.set_equal;
        j["round_trip_failures"] = rep.round_trip_failures;
        j["first_divergence"] = rep.first_divergence ? json(*rep.first_divergence) : json(nullptr);
        j["ok"] = rep.ok();
        emit(j);
      } else {
        std::cout << "brute " << rep.brute_count << "\n"
                  << "index " << rep.index_count << "\n";
        if (rep.ok())
          std::cout << "OK\n";
        else
          std::cout << "FAIL " << rep.first_divergence.value_or("set mismatch") << "\n";
      }
      if (!rep.ok()) return 1;
    }
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const phorma::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
