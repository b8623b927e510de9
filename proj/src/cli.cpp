#include "nanocob/cli.hpp"

#include "nanocob/explorer.hpp"
#include "nanocob/suites.hpp"
#include "nanocob/surfaces.hpp"
#include "nanocob/textio.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace nanocob {

Caps parse_caps(const std::string& text) {
  Caps caps;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("caps entry '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq);
    long long v = 0;
    try {
      std::size_t used = 0;
      v = std::stoll(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw std::invalid_argument("caps value for '" + key + "' is not an integer");
    }
    if (v <= 0) throw std::invalid_argument("caps value for '" + key + "' must be positive");
    if (key == "k") caps.max_k = static_cast<int>(v);
    else if (key == "letters") caps.max_letters = static_cast<int>(v);
    else if (key == "bfs") caps.bfs_length = static_cast<int>(v);
    else if (key == "nodes") caps.bfs_nodes = static_cast<std::size_t>(v);
    else if (key == "s") caps.s_bound = static_cast<int>(v);
    else throw std::invalid_argument("unknown caps key '" + key + "'");
  }
  return caps;
}

std::string fingerprint(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

namespace {

struct Session {
  std::string alphabet_file;
  std::vector<std::string> words;
  std::string caps_text;
  std::vector<std::string> phi;
  std::string format = "text";
  std::uint64_t seed = 42;
  unsigned jobs = 1;
  bool strict = false;
  bool override_limits = false;

  Caps caps;
  AlphabetPtr alphabet;
  std::vector<Nanoword> inputs;
  std::vector<Nanophrase> phrases;
};

// A source that fails to parse: carries the file name for the message.
struct InputError {
  std::string source;
  ParseError error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_file(const std::string& s) {
  std::error_code ec;
  return std::filesystem::is_regular_file(s, ec);
}

ParsedInput parse_source(const std::string& source, const std::string& text, const AlphabetPtr& alpha, bool strict) {
  try {
    return alpha ? parse_input(text, alpha) : parse_input(text, strict);
  } catch (const ParseError& e) {
    throw InputError{source, e};
  }
}

void load(Session& s) {
  s.caps = parse_caps(s.caps_text);
  if (!s.alphabet_file.empty()) {
    ParsedInput p = parse_source(s.alphabet_file, read_file(s.alphabet_file), nullptr, s.strict);
    s.alphabet = p.alphabet;
    for (auto& w : p.words) s.inputs.push_back(std::move(w));
    for (auto& v : p.phrases) s.phrases.push_back(std::move(v));
  }
  for (const auto& w : s.words) {
    const bool file = is_file(w);
    const std::string source = file ? w : "--word";
    ParsedInput p = parse_source(source, file ? read_file(w) : inline_word_text(w), s.alphabet, s.strict);
    if (!s.alphabet) s.alphabet = p.alphabet;
    for (auto& x : p.words) s.inputs.push_back(std::move(x));
    for (auto& v : p.phrases) s.phrases.push_back(std::move(v));
  }
}

std::vector<PhiSpec> phis_of(const Session& s) {
  std::vector<PhiSpec> out;
  for (const auto& spec : s.phi) {
    if (spec == "all") {
      for (auto& p : sign_battery(*s.alphabet)) out.push_back(std::move(p));
    } else {
      out.push_back(PhiSpec::parse(*s.alphabet, spec));
    }
  }
  if (out.empty()) out = sign_battery(*s.alphabet);
  return out;
}

void require_words(const Session& s) {
  if (s.inputs.empty()) throw std::invalid_argument("no word given (use --word)");
}

std::string sigma_text(const Genus& g) {
  std::string v = g.twice_value % 2 == 0 ? std::to_string(g.twice_value / 2) : std::to_string(g.twice_value) + "/2";
  return g.upper_bound ? "<=" + v : v;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string word_line(const Nanoword& w) {
  return w.projection_string().empty() ? w.to_string() : w.to_string() + " / " + w.projection_string();
}

const char* kCsvHeader = "word,length,gamma,u_hash,u,sigma,verdict";

void csv_row(std::ostream& out, const InvariantRecord& r, const SliceVerdict& v) {
  const auto& g = r.word.ground();
  const std::string u = format_upoly(r.u, g);
  std::string sigma;
  for (const auto& [id, gen] : r.genera) sigma += (sigma.empty() ? "" : ";") + id + ":" + sigma_text(gen);
  out << csv_field(word_line(r.word)) << ',' << r.word.length() << ',' << csv_field(format_pi_word(r.gamma)) << ','
      << fingerprint(u) << ',' << csv_field(u) << ',' << csv_field(sigma) << ',' << csv_field(format_verdict(v))
      << '\n';
}

int cmd_invariants(Session& s, std::ostream& out) {
  require_words(s);
  const auto phis = phis_of(s);
  if (s.format == "csv") out << kCsvHeader << '\n';
  for (const auto& w : s.inputs) {
    const InvariantRecord r = invariant_record(w, phis);
    const SliceVerdict v = slice_status(w, s.caps);
    if (s.format == "csv") {
      csv_row(out, r, v);
      continue;
    }
    const auto& g = w.ground();
    out << "word: " << word_line(w) << '\n';
    out << "canonical: " << word_line(r.word) << '\n';
    out << "length: " << w.length() << '\n';
    out << "gamma: " << format_pi_word(r.gamma) << '\n';
    out << "gamma class: " << format_pi_word(r.gamma_conj_class) << '\n';
    out << "u: " << format_upoly(r.u, g) << '\n';
    for (const auto& [id, gen] : r.genera) out << "sigma[" << id << "]: " << sigma_text(gen) << '\n';
    out << "hyperbolic: " << (r.hyperbolic ? "yes" : "no") << '\n';
    out << "r: " << format_pi(g, r.r) << '\n';
    out << "verdict: " << format_verdict(v) << "\n\n";
  }
  return kExitOk;
}

int cmd_pairing(Session& s, std::ostream& out, bool alt) {
  require_words(s);
  for (const auto& w : s.inputs) {
    out << format_pairing(alt ? pairing_of_nanoword_alt(w) : pairing_of_nanoword(w));
  }
  return kExitOk;
}

int cmd_fillings(Session& s, std::ostream& out, std::size_t limit) {
  require_words(s);
  const auto phis = phis_of(s);
  for (const auto& w : s.inputs) {
    const AlphaPairing p = pairing_of_nanoword(w);
    std::vector<IntMatrix> mats;
    for (const auto& phi : phis) mats.push_back(phi_matrix(p, phi));
    std::size_t count = 0;
    std::size_t annihilating = 0;
    for_each_filling(p, [&](const Filling& f) {
      ++count;
      const bool ann = is_annihilating(p, f);
      if (ann) ++annihilating;
      if (count <= limit) {
        out << format_filling(p, f) << (ann ? "  annihilating" : "");
        for (std::size_t k = 0; k < phis.size(); ++k) out << "  rank[" << phis[k].id(w.ground()) << "]=" << gram_rank(mats[k], phis[k], f);
        out << '\n';
      }
      return true;
    });
    if (count > limit) out << "... " << (count - limit) << " more\n";
    out << "fillings: " << count << ", annihilating: " << annihilating << '\n';
    out << "hyperbolic: " << (annihilating > 0 ? "yes" : "no") << '\n';
  }
  return kExitOk;
}

int cmd_surface(Session& s, std::ostream& out) {
  require_words(s);
  int status = kExitOk;
  for (const auto& w : s.inputs) {
    const RibbonGraph g = ribbon_graph_of(w);
    const SurfaceStats st = surface_stats(g);
    const std::size_t rank = tautological_rank(w);
    const bool ok = rank == 2 * static_cast<std::size_t>(st.genus);
    if (!ok) status = kExitFailed;
    out << "word: " << word_line(w) << '\n'
        << "V=" << g.vertex_count() << " E=" << g.edge_count() << " chi=" << st.euler
        << " boundary=" << st.boundary_components << " genus=" << st.genus << " rank=" << rank
        << (ok ? "  rank=2*genus" : "  MISMATCH") << '\n';
  }
  return status;
}

Nanoword target_word(const Session& s, const std::string& spec) {
  const bool file = is_file(spec);
  ParsedInput p = parse_source(file ? spec : "--to", file ? read_file(spec) : inline_word_text(spec), s.alphabet, s.strict);
  if (p.words.size() != 1) throw std::invalid_argument("--to needs exactly one word");
  return p.words[0];
}

int cmd_moves(Session& s, std::ostream& out, const std::string& replay_file, const std::string& to, bool shifts) {
  require_words(s);
  const Nanoword& w = s.inputs.front();
  if (!replay_file.empty()) {
    const Metamorphosis m = parse_log(read_file(replay_file), w.ground());
    Nanoword cur = w;
    out << "start: " << word_line(cur) << '\n';
    for (const auto& mv : m.moves) {
      const std::string text = format_move(cur, mv);
      cur = apply_move(cur, mv);
      out << text << "  -> " << word_line(cur) << '\n';
    }
    out << "result: " << word_line(cur) << '\n' << "arches: " << m.total_arches() << '\n';
    if (!to.empty()) {
      const bool ok = isomorphic(cur, target_word(s, to));
      out << "target: " << (ok ? "reached" : "NOT reached") << '\n';
      return ok ? kExitOk : kExitFailed;
    }
    return kExitOk;
  }
  if (!to.empty()) {
    Repertoire rep;
    rep.shifts = shifts;
    rep.templates = s.phrases;  // phrases from the input files become extra insertions
    const Nanoword v = target_word(s, to);
    const BfsOutcome r = bounded_bfs(w, v, rep, s.caps);
    if (!r.found) {
      out << "no metamorphosis found within caps (" << r.nodes << " words visited"
          << (r.exhausted ? ", search space exhausted" : "") << ")\n";
      return kExitFailed;
    }
    out << format_log(w, r.path);
    return kExitOk;
  }
  // Listing of the moves available on w.
  for (auto i : find_h1_sites(w)) out << format_move(w, {MoveKind::H1, false, {i}, {}, {}, {}, {}}) << '\n';
  for (auto st : find_h2_sites(w)) out << format_move(w, {MoveKind::H2, false, {st.i, st.j}, {}, {}, {}, {}}) << '\n';
  for (bool inv : {false, true}) {
    for (auto st : find_h3_sites(w, inv)) {
      out << format_move(w, {MoveKind::H3, inv, {st.i, st.j, st.k}, {}, {}, {}, {}}) << '\n';
    }
  }
  for (const auto& f : enumerate_even_symmetric_factors(w, s.caps.max_letters, s.caps.max_k)) {
    out << format_move(w, {MoveKind::Surgery, false, {}, f.segments, {}, {}, {}}) << '\n';
  }
  for (const auto& b : enumerate_bridges(w, s.caps.max_letters, s.caps.max_k)) {
    if (b.arches == 0) continue;  // already listed as surgeries
    out << format_move(w, {MoveKind::Bridge, false, {}, b.factor.segments, b.kappa, {}, {}}) << '\n';
  }
  if (!w.empty()) out << "SHIFT\n";
  return kExitOk;
}

int cmd_check_slice(Session& s, std::ostream& out, bool norm) {
  require_words(s);
  for (const auto& w : s.inputs) {
    const SliceVerdict v = slice_status(w, s.caps);
    out << "word: " << word_line(w) << '\n' << "verdict: " << format_verdict(v) << '\n';
    if (v.all_obstructions.size() > 1) {
      out << "obstructions:";
      for (const auto& o : v.all_obstructions) out << ' ' << o;
      out << '\n';
    }
    if (v.status == SliceStatus::Slice && !v.witness.moves.empty()) out << "witness:\n" << format_log(w, v.witness);
    if (norm) {
      const NormBounds nb = length_norm_bounds(w, s.caps);
      out << "length norm: " << nb.lower << " <= ||w|| <= " << nb.upper << '\n';
    }
    out << '\n';
  }
  return kExitOk;
}

const char* relation_name(PairRelation r) {
  switch (r) {
    case PairRelation::Distinct:
      return "Distinct";
    case PairRelation::Cobordant:
      return "Cobordant";
    case PairRelation::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

int cmd_classify(Session& s, std::ostream& out, std::size_t n) {
  if (!s.alphabet) throw std::invalid_argument("classify needs --alphabet");
  const Classification c = classify(n, s.alphabet, s.caps, s.override_limits, s.jobs);
  if (s.format == "csv") {
    out << kCsvHeader << '\n';
    for (const auto& row : c.rows) csv_row(out, row.record, row.verdict);
    return kExitOk;
  }
  std::size_t counts[3] = {0, 0, 0};
  for (std::size_t i = 0; i < c.rows.size(); ++i) {
    const auto& row = c.rows[i];
    out << std::setw(4) << i << "  " << std::left << std::setw(36) << word_line(row.record.word) << std::right
        << "  class " << std::setw(3) << row.component << "  " << format_verdict(row.verdict) << '\n';
    for (std::size_t j = i + 1; j < c.rows.size(); ++j) ++counts[static_cast<int>(c.relation[i][j])];
  }
  out << "pairs: " << counts[0] << " " << relation_name(PairRelation::Distinct) << ", " << counts[1] << " "
      << relation_name(PairRelation::Cobordant) << ", " << counts[2] << " " << relation_name(PairRelation::Unknown)
      << '\n';
  std::size_t shown = 0;
  for (std::size_t i = 0; i < c.rows.size(); ++i) {
    for (std::size_t j = i + 1; j < c.rows.size(); ++j) {
      if (c.relation[i][j] != PairRelation::Unknown) continue;
      if (shown++ < 20) out << "unknown: " << i << " " << j << '\n';
    }
  }
  return kExitOk;
}

int cmd_verify(Session& s, std::ostream& out, const std::string& suite) {
  SuiteSizes sizes;
  sizes.s_bound = s.caps.s_bound;
  bool ok = true;
  for (const auto& r : run_suites(suite, s.seed, sizes)) {
    ok = ok && r.passed();
    out << (r.passed() ? "PASS " : "FAIL ") << r.name << "  cases=" << r.cases << " failures=" << r.failures
        << std::fixed << std::setprecision(2) << " time=" << r.seconds << "s\n";
    for (const auto& m : r.messages) out << "    " << m << '\n';
  }
  return ok ? kExitOk : kExitFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cobordism invariants of nanowords"};
  app.require_subcommand(1);
  app.fallthrough();
  Session s;
  app.add_option("--alphabet", s.alphabet_file, "alphabet file (alphabet:/tau: lines, words allowed)");
  app.add_option("--word", s.words, "word file, or inline 'A B A B / A=a B=b'");
  app.add_option("--caps", s.caps_text, "search caps, e.g. k=4,letters=6,bfs=12,nodes=2000,s=2");
  app.add_option("--phi", s.phi, "'all' or a map such as a=1,b=-1 or a=1;p=2 (repeatable)");
  app.add_option("--format", s.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
  app.add_option("--seed", s.seed, "random seed");
  app.add_option("--jobs", s.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--strict", s.strict, "reject repeated tau pairs");
  app.add_flag("--override", s.override_limits, "allow enumeration beyond 3 symbols or half-length 6");

  auto* invariants = app.add_subcommand("invariants", "gamma, u, genera, hyperbolicity, verdict");
  bool alt = false;
  auto* pairing = app.add_subcommand("pairing", "print the pairing matrix");
  pairing->add_flag("--alt", alt, "use the gap-interleaving formula");
  std::size_t limit = 50;
  auto* fillings = app.add_subcommand("fillings", "list fillings with annihilation and Gram ranks");
  fillings->add_option("--limit", limit, "fillings to print");
  auto* surface = app.add_subcommand("surface", "ribbon surface statistics for words over {+,-}");
  std::string replay_file;
  std::string to;
  bool shifts = false;
  auto* moves = app.add_subcommand("moves", "list moves, replay a log, or search for a metamorphosis");
  moves->add_option("--replay", replay_file, "move log to replay");
  moves->add_option("--to", to, "target word (inline or file)");
  moves->add_flag("--shifts", shifts, "allow circular shifts in the search");
  bool norm = false;
  auto* check = app.add_subcommand("check-slice", "slice verdict with witness or obstruction");
  check->add_flag("--norm", norm, "also print length-norm bounds");
  std::size_t half = 2;
  auto* classify_cmd = app.add_subcommand("classify", "classify words up to a half-length");
  classify_cmd->add_option("--n", half, "largest half-length");
  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run the property suites");
  verify->add_option("--suite", suite, "suite name or all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    load(s);
    if (invariants->parsed()) return cmd_invariants(s, out);
    if (pairing->parsed()) return cmd_pairing(s, out, alt);
    if (fillings->parsed()) return cmd_fillings(s, out, limit);
    if (surface->parsed()) return cmd_surface(s, out);
    if (moves->parsed()) return cmd_moves(s, out, replay_file, to, shifts);
    if (check->parsed()) return cmd_check_slice(s, out, norm);
    if (classify_cmd->parsed()) return cmd_classify(s, out, half);
    if (verify->parsed()) return cmd_verify(s, out, suite);
  } catch (const InputError& e) {
    err << e.source << ":" << e.error.line() << ":" << e.error.column() << ": error: " << e.error.message() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitInput;
}

}  // namespace nanocob
