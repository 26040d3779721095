#ifndef PHORMA_SPECIO_HPP
#define PHORMA_SPECIO_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "phorma/error.hpp"
#include "phorma/index.hpp"
#include "phorma/seq.hpp"
#include "phorma/seqcore.hpp"

namespace phorma {

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline std::uint64_t parse_u64(const std::string& tok, std::size_t where) {
  if (tok.empty()) throw parse_error("expected a number", where);
  std::uint64_t v = 0;
  for (char c : tok) {
    if (c < '0' || c > '9') throw parse_error("expected a number, got '" + tok + "'", where);
    if (v > (0xffffffffffffffffull - (c - '0')) / 10)
      throw parse_error("number too large: " + tok, where);
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

inline Val parse_val(const std::string& tok, std::size_t where) {
  const std::uint64_t v = parse_u64(tok, where);
  if (v > 0xffffffffull) throw parse_error("entry too large: " + tok, where);
  return static_cast<Val>(v);
}

inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex16(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// .phorma spec files.  Line-oriented UTF-8; '#' starts a comment.  Keys:
//   dim N
//   bounds <ints, ^k run-length shorthand allowed>
//   B: <boolean expression over a1..an>        (omitted or empty: no restriction)
//   B-list: <seq> ; <seq> ; ...                (explicit reduced sequences)
//   C: all | list (..),(..) | expr <boolean expression over d1..dn>
// ---------------------------------------------------------------------------

inline PhormaSpec parse_spec(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  std::map<std::string, std::pair<std::string, std::size_t>> fields;
  while (std::getline(in, raw)) {
    ++lineno;
    if (const std::size_t hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    while (!raw.empty() && (raw.back() == '\r' || raw.back() == ' ' || raw.back() == '\t'))
      raw.pop_back();
    std::size_t start = 0;
    while (start < raw.size() && (raw[start] == ' ' || raw[start] == '\t')) ++start;
    if (start == raw.size()) continue;
    std::size_t key_end = start;
    while (key_end < raw.size() && raw[key_end] != ' ' && raw[key_end] != '\t') ++key_end;
    std::string key = raw.substr(start, key_end - start);
    if (!key.empty() && key.back() == ':') key.pop_back();
    std::size_t val_start = key_end;
    while (val_start < raw.size() && (raw[val_start] == ' ' || raw[val_start] == '\t'))
      ++val_start;
    if (key != "dim" && key != "bounds" && key != "B" && key != "B-list" && key != "C")
      throw parse_error("unknown spec key '" + key + "' on line " + std::to_string(lineno),
                        lineno);
    if (fields.count(key))
      throw parse_error("duplicate spec key '" + key + "' on line " + std::to_string(lineno),
                        lineno);
    fields[key] = {raw.substr(val_start), lineno};
  }

  const auto dim_it = fields.find("dim");
  if (dim_it == fields.end()) throw parse_error("missing 'dim' line", lineno);
  const std::uint64_t dim = detail::parse_u64(dim_it->second.first, dim_it->second.second);
  if (dim == 0 || dim > 10000) throw parse_error("dim out of range", dim_it->second.second);

  const auto bounds_it = fields.find("bounds");
  if (bounds_it == fields.end()) throw parse_error("missing 'bounds' line", lineno);
  PhormaSpec spec;
  for (const std::string& tok : detail::split_ws(bounds_it->second.first)) {
    const std::size_t caret = tok.find('^');
    const std::size_t line = bounds_it->second.second;
    if (caret == std::string::npos) {
      spec.bounds.push_back(detail::parse_val(tok, line));
    } else {
      const Val base = detail::parse_val(tok.substr(0, caret), line);
      const std::uint64_t rep = detail::parse_u64(tok.substr(caret + 1), line);
      if (rep == 0 || rep > dim) throw parse_error("bad repeat in '" + tok + "'", line);
      for (std::uint64_t i = 0; i < rep; ++i) spec.bounds.push_back(base);
    }
  }
  if (spec.bounds.size() != dim)
    throw parse_error("bounds lists " + std::to_string(spec.bounds.size()) +
                          " entries but dim is " + std::to_string(dim),
                      bounds_it->second.second);

  if (fields.count("B") && fields.count("B-list"))
    throw parse_error("'B' and 'B-list' are mutually exclusive", fields["B-list"].second);
  if (const auto it = fields.find("B"); it != fields.end()) {
    spec.order = OrderRestriction::expression(
        BoolExpr::parse(it->second.first, static_cast<std::uint32_t>(dim), 'a'));
  } else if (const auto lit = fields.find("B-list"); lit != fields.end()) {
    std::vector<Seq> list;
    std::string entry;
    std::istringstream items(lit->second.first);
    while (std::getline(items, entry, ';')) {
      if (entry.find_first_not_of(" \t") == std::string::npos) continue;
      list.push_back(parse_seq(entry));
    }
    if (list.empty()) throw parse_error("empty B-list", lit->second.second);
    spec.order = OrderRestriction::reduced_list(std::move(list),
                                                static_cast<std::uint32_t>(dim));
  }

  if (const auto it = fields.find("C"); it != fields.end()) {
    const std::string& v = it->second.first;
    const std::size_t line = it->second.second;
    std::size_t sp = v.find_first_of(" \t");
    const std::string kind = v.substr(0, sp);
    const std::string rest = sp == std::string::npos ? "" : v.substr(sp + 1);
    if (kind == "all") {
      spec.comp = CompConstraint::all();
    } else if (kind == "expr") {
      spec.comp = CompConstraint::restricted(
          BoolExpr::parse(rest, static_cast<std::uint32_t>(dim), 'd'));
    } else if (kind == "list") {
      std::vector<Seq> comps;
      std::size_t i = 0;
      auto skip = [&] { while (i < rest.size() && (rest[i] == ' ' || rest[i] == '\t')) ++i; };
      skip();
      while (i < rest.size()) {
        if (rest[i] != '(') throw parse_error("expected '(' in C list", line);
        const std::size_t close = rest.find(')', i);
        if (close == std::string::npos) throw parse_error("unterminated '(' in C list", line);
        comps.push_back(parse_seq(rest.substr(i + 1, close - i - 1)));
        i = close + 1;
        skip();
        if (i < rest.size()) {
          if (rest[i] != ',') throw parse_error("expected ',' between C entries", line);
          ++i;
          skip();
        }
      }
      if (comps.empty()) throw parse_error("empty C list", line);
      spec.comp = CompConstraint::explicit_list(std::move(comps),
                                                static_cast<std::uint32_t>(dim));
    } else {
      throw parse_error("C must be 'all', 'list (...)' or 'expr ...'", line);
    }
  }

  spec.validate();
  return spec;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot write " + path);
  out << bytes;
  if (!out) throw io_error("failed writing " + path);
}

inline PhormaSpec load_spec(const std::string& path) { return parse_spec(read_file(path)); }

// ---------------------------------------------------------------------------
// .phx index images: key-value header, tabular sections in fixed order, and
// a trailing FNV-1a-64 checksum over all preceding bytes.  Saving the same
// index always yields the same bytes.
// ---------------------------------------------------------------------------

inline std::string save_index(const PhormaIndex& idx) {
  const PhormaSpec& spec = idx.spec();
  std::string out;
  out += "phx 1\n";
  out += "dim " + std::to_string(spec.dim()) + "\n";
  out += "bounds";
  for (Val b : spec.bounds) out += " " + std::to_string(b);
  out += "\n";
  if (spec.order.is_list()) {
    out += "B list " + std::to_string(spec.order.list().size()) + "\n";
    for (const Seq& beta : spec.order.list()) {
      out += "b";
      for (Val v : beta) out += " " + std::to_string(v);
      out += "\n";
    }
  } else if (spec.order.expr().empty()) {
    out += "B true\n";
  } else {
    out += "B expr " + spec.order.expr().to_string() + "\n";
  }
  switch (spec.comp.kind()) {
    case CompConstraint::Kind::all:
      out += "C all\n";
      break;
    case CompConstraint::Kind::restricted:
      out += "C expr " + spec.comp.expr().to_string() + "\n";
      break;
    case CompConstraint::Kind::explicit_list:
      out += "C list " + std::to_string(spec.comp.list().size()) + "\n";
      for (const Seq& d : spec.comp.list()) {
        out += "c";
        for (Val v : d) out += " " + std::to_string(v);
        out += "\n";
      }
      break;
  }

  const HVertexStore& store = idx.store();
  out += "seeds " + std::to_string(store.seeds().size()) + "\n";
  for (const Seq& s : store.seeds()) {
    out += "s";
    for (Val v : s) out += " " + std::to_string(v);
    out += "\n";
  }
  std::size_t hcount = 0;
  for (const HVertexStore::Bucket& b : store.buckets()) hcount += b.entries.size();
  out += "hverts " + std::to_string(hcount) + "\n";
  for (const HVertexStore::Bucket& b : store.buckets())
    for (const HVertexStore::Entry& e : b.entries) {
      out += "v " + std::to_string(e.order);
      for (Val v : e.gamma) out += " " + std::to_string(v);
      out += "\n";
    }
  out += "reds " + std::to_string(idx.reduced().size()) + "\n";
  for (const PhormaIndex::RedEntry& e : idx.reduced()) {
    out += "r " + std::to_string(e.order) + " " + std::to_string(e.offset);
    for (Val v : e.beta) out += " " + std::to_string(v);
    out += "\n";
  }
  const IndexStats st = idx.stats();
  out += "stats " + std::to_string(st.v_g) + " " + std::to_string(st.v_h) + " " +
         std::to_string(st.red_count) + " " + std::to_string(st.roof_count) + " " +
         std::to_string(st.max_roof_count) + " " + std::to_string(st.lambda) + " " +
         std::to_string(st.nu) + "\n";
  out += "total " + std::to_string(idx.count()) + "\n";
  out += "checksum fnv1a64 " + detail::hex16(detail::fnv1a64(out)) + "\n";
  return out;
}

inline void save_index_file(const PhormaIndex& idx, const std::string& path) {
  write_file(path, save_index(idx));
}

inline PhormaIndex load_index(const std::string& bytes) {
  // Validate the trailing checksum over everything before its line.
  const std::size_t tail = bytes.rfind("checksum ");
  if (tail == std::string::npos || (tail != 0 && bytes[tail - 1] != '\n'))
    throw io_error("index image is truncated: no checksum line");
  {
    std::istringstream line(bytes.substr(tail));
    std::string key, algo, hex;
    line >> key >> algo >> hex;
    if (algo != "fnv1a64") throw io_error("unknown checksum algorithm: " + algo);
    if (hex != detail::hex16(detail::fnv1a64(bytes.substr(0, tail))))
      throw io_error("index image checksum mismatch");
  }

  std::istringstream in(bytes.substr(0, tail));
  std::size_t lineno = 0;
  auto next_tokens = [&](const std::string& want) {
    std::string raw;
    if (!std::getline(in, raw)) throw io_error("index image is truncated after line " +
                                               std::to_string(lineno));
    ++lineno;
    std::vector<std::string> toks = detail::split_ws(raw);
    if (toks.empty() || toks[0] != want)
      throw io_error("expected '" + want + "' on line " + std::to_string(lineno));
    return toks;
  };
  auto rest_of = [](const std::string& raw, std::size_t skip_words) {
    std::size_t i = 0;
    for (std::size_t w = 0; w < skip_words; ++w) {
      while (i < raw.size() && raw[i] == ' ') ++i;
      while (i < raw.size() && raw[i] != ' ') ++i;
    }
    while (i < raw.size() && raw[i] == ' ') ++i;
    return raw.substr(i);
  };

  {
    std::vector<std::string> v = next_tokens("phx");
    if (v.size() != 2) throw io_error("malformed version line");
    if (v[1] != "1") throw io_error("unsupported index image version " + v[1]);
  }
  PhormaSpec spec;
  std::uint64_t dim;
  {
    std::vector<std::string> v = next_tokens("dim");
    if (v.size() != 2) throw io_error("malformed dim line");
    dim = detail::parse_u64(v[1], lineno);
  }
  {
    std::vector<std::string> v = next_tokens("bounds");
    if (v.size() != 1 + dim) throw io_error("bounds entry count does not match dim");
    for (std::size_t i = 1; i < v.size(); ++i)
      spec.bounds.push_back(detail::parse_val(v[i], lineno));
  }
  {
    std::string raw;
    if (!std::getline(in, raw)) throw io_error("index image is truncated");
    ++lineno;
    std::vector<std::string> v = detail::split_ws(raw);
    if (v.size() < 2 || v[0] != "B") throw io_error("expected 'B' on line " +
                                                    std::to_string(lineno));
    if (v[1] == "true") {
      spec.order = OrderRestriction::expression(BoolExpr::always_true('a'));
    } else if (v[1] == "expr") {
      spec.order = OrderRestriction::expression(
          BoolExpr::parse(rest_of(raw, 2), static_cast<std::uint32_t>(dim), 'a'));
    } else if (v[1] == "list") {
      const std::uint64_t k = detail::parse_u64(v[2], lineno);
      std::vector<Seq> list;
      for (std::uint64_t i = 0; i < k; ++i) {
        std::vector<std::string> e = next_tokens("b");
        Seq beta;
        for (std::size_t j = 1; j < e.size(); ++j)
          beta.push_back(detail::parse_val(e[j], lineno));
        list.push_back(std::move(beta));
      }
      spec.order = OrderRestriction::reduced_list(std::move(list),
                                                  static_cast<std::uint32_t>(dim));
    } else {
      throw io_error("unknown B kind: " + v[1]);
    }
  }
  {
    std::string raw;
    if (!std::getline(in, raw)) throw io_error("index image is truncated");
    ++lineno;
    std::vector<std::string> v = detail::split_ws(raw);
    if (v.size() < 2 || v[0] != "C") throw io_error("expected 'C' on line " +
                                                    std::to_string(lineno));
    if (v[1] == "all") {
      spec.comp = CompConstraint::all();
    } else if (v[1] == "expr") {
      spec.comp = CompConstraint::restricted(
          BoolExpr::parse(rest_of(raw, 2), static_cast<std::uint32_t>(dim), 'd'));
    } else if (v[1] == "list") {
      const std::uint64_t k = detail::parse_u64(v[2], lineno);
      std::vector<Seq> comps;
      for (std::uint64_t i = 0; i < k; ++i) {
        std::vector<std::string> e = next_tokens("c");
        Seq d;
        for (std::size_t j = 1; j < e.size(); ++j) d.push_back(detail::parse_val(e[j], lineno));
        comps.push_back(std::move(d));
      }
      spec.comp = CompConstraint::explicit_list(std::move(comps),
                                                static_cast<std::uint32_t>(dim));
    } else {
      throw io_error("unknown C kind: " + v[1]);
    }
  }

  std::vector<Seq> seeds;
  {
    std::vector<std::string> v = next_tokens("seeds");
    const std::uint64_t k = detail::parse_u64(v[1], lineno);
    for (std::uint64_t i = 0; i < k; ++i) {
      std::vector<std::string> e = next_tokens("s");
      Seq s;
      for (std::size_t j = 1; j < e.size(); ++j) s.push_back(detail::parse_val(e[j], lineno));
      seeds.push_back(std::move(s));
    }
  }
  std::vector<std::pair<Seq, std::uint64_t>> hverts;
  {
    std::vector<std::string> v = next_tokens("hverts");
    const std::uint64_t k = detail::parse_u64(v[1], lineno);
    for (std::uint64_t i = 0; i < k; ++i) {
      std::vector<std::string> e = next_tokens("v");
      if (e.size() < 3) throw io_error("malformed vertex on line " + std::to_string(lineno));
      const std::uint64_t order = detail::parse_u64(e[1], lineno);
      Seq g;
      for (std::size_t j = 2; j < e.size(); ++j) g.push_back(detail::parse_val(e[j], lineno));
      hverts.emplace_back(std::move(g), order);
    }
  }
  std::vector<PhormaIndex::RedEntry> reds;
  {
    std::vector<std::string> v = next_tokens("reds");
    const std::uint64_t k = detail::parse_u64(v[1], lineno);
    for (std::uint64_t i = 0; i < k; ++i) {
      std::vector<std::string> e = next_tokens("r");
      if (e.size() != 3 + dim)
        throw io_error("malformed reduced entry on line " + std::to_string(lineno));
      PhormaIndex::RedEntry entry;
      entry.order = detail::parse_u64(e[1], lineno);
      entry.offset = detail::parse_u64(e[2], lineno);
      for (std::size_t j = 3; j < e.size(); ++j)
        entry.beta.push_back(detail::parse_val(e[j], lineno));
      std::optional<Seq> rf = roof(entry.beta, spec.bounds);
      if (!rf)
        throw io_error("reduced entry " + format_seq(entry.beta) +
                       " has no feasible roof under the stored bounds");
      entry.roofseq = std::move(*rf);
      reds.push_back(std::move(entry));
    }
  }
  std::vector<std::uint64_t> stats_echo;
  {
    std::vector<std::string> v = next_tokens("stats");
    for (std::size_t j = 1; j < v.size(); ++j)
      stats_echo.push_back(detail::parse_u64(v[j], lineno));
    if (stats_echo.size() != 7) throw io_error("malformed stats line");
  }
  std::uint64_t total;
  {
    std::vector<std::string> v = next_tokens("total");
    if (v.size() != 2) throw io_error("malformed total line");
    total = detail::parse_u64(v[1], lineno);
  }
  {
    std::string raw;
    if (std::getline(in, raw) && !detail::split_ws(raw).empty())
      throw io_error("unexpected content after the total line");
  }

  HVertexStore store;
  try {
    store = HVertexStore::from_serialized(std::move(hverts), std::move(seeds));
  } catch (const domain_error& e) {
    throw io_error(std::string("corrupt vertex store: ") + e.what());
  }
  PhormaIndex idx = [&] {
    try {
      return PhormaIndex::assemble(std::move(spec), std::move(reds), std::move(store), total);
    } catch (const domain_error& e) {
      throw io_error(std::string("corrupt index image: ") + e.what());
    }
  }();
  const IndexStats st = idx.stats();
  const std::uint64_t expect[7] = {st.v_g,  st.v_h,   st.red_count, st.roof_count,
                                   st.max_roof_count, st.lambda,    st.nu};
  for (int i = 0; i < 7; ++i)
    if (stats_echo[i] != expect[i])
      throw io_error("stats echo does not match the reconstructed index");
  return idx;
}

inline PhormaIndex load_index_file(const std::string& path) {
  return load_index(read_file(path));
}

}  // namespace phorma

#endif  // PHORMA_SPECIO_HPP
