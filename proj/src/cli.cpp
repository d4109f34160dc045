#include "threshkit/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "threshkit/error.hpp"
#include "threshkit/io.hpp"

namespace threshkit::cli {

namespace fs = std::filesystem;
using io::Json;

namespace {

struct Outcome {
  int code = kOk;
  std::string table;
  Json structured;
};

int code_for(ErrorKind kind) { return kind == ErrorKind::CapExceeded ? kCapExceeded : kInputError; }

std::string show(const Enclosure& e) {
  if (e.is_point()) return to_string(e.lo) + " (exact)";
  return "~" + io::approx((e.lo + e.hi) / 2) + "  in [" + io::approx(e.lo) + ", " + io::approx(e.hi) + "]";
}

std::string show_cover(const Cover& c, const GroundSet& g) {
  std::string out = "{";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ", ";
    out += g.render(c.members()[i]);
  }
  return out + "}";
}

class Table {
 public:
  Table& row(const std::string& key, const std::string& value) {
    rows_.emplace_back(key, value);
    return *this;
  }
  std::string str() const {
    std::size_t w = 0;
    for (const auto& r : rows_) w = std::max(w, r.first.size());
    std::ostringstream os;
    for (const auto& [k, v] : rows_) os << std::left << std::setw(static_cast<int>(w + 2)) << k << v << "\n";
    return os.str();
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

const Rational& require_q(const RunConfig& cfg) {
  if (!cfg.q) throw Error(ErrorKind::InvalidArgument, "command '" + cfg.command + "' needs -q");
  if (*cfg.q <= 0 || *cfg.q >= 1) throw Error(ErrorKind::InvalidProbability, "-q must lie in (0, 1)");
  return *cfg.q;
}

Outcome analyze(const RunConfig& cfg, const Family& f) {
  const auto pc = p_c(f, cfg.width);
  const auto qc = q_c(f, cfg.width);
  const auto qf = q_f(f, cfg.width);
  const int l = largest_minimal_size(f);
  const Integer members = member_count(f);
  Outcome o;
  o.table = Table()
                .row("family", family_id(f))
                .row("l", std::to_string(l))
                .row("members", members.get_str())
                .row("p_c", show(pc))
                .row("q_c", show(qc.enclosure))
                .row("q_f", show(qf.enclosure))
                .str();
  o.structured = Json{{"family", io::to_json(f)},
                      {"l", l},
                      {"member_count", members.get_str()},
                      {"p_c", io::to_json(pc)},
                      {"q_c", io::to_json(qc, f.ground())},
                      {"q_f", io::to_json(qf, f.ground())}};
  return o;
}

Outcome clone_cmd(const RunConfig& cfg, const Family& f) {
  const auto c = clone_family(f, cfg.k);
  Outcome o;
  o.table = Table()
                .row("family", family_id(f))
                .row("k", std::to_string(cfg.k))
                .row("cloned ground", std::to_string(c.map.cloned().size()) + " elements")
                .row("generators", std::to_string(c.family.generators().size()))
                .row("l", std::to_string(largest_minimal_size(c.family)))
                .str();
  std::string gens;
  for (Mask g : c.family.generators()) gens += c.map.cloned().render(g) + "\n";
  o.table += gens;
  o.structured = Json{{"clone_map", io::to_json(c.map)}, {"family", io::to_json(c.family)}};
  return o;
}

Outcome qc_cmd(const RunConfig& cfg, const Family& f) {
  const auto r = q_c(f, cfg.width);
  Outcome o;
  o.table = Table()
                .row("family", family_id(f))
                .row("q_c", show(r.enclosure))
                .row("lower cover", show_cover(r.certificates.lower_cover, f.ground()) + " at q = " +
                                        to_string(r.certificates.lower_q) + ", cost " +
                                        to_string(r.certificates.lower_cost))
                .row("upper", r.certificates.upper_proof + " at q = " + to_string(r.certificates.upper_q))
                .str();
  o.structured = io::to_json(r, f.ground());
  return o;
}

Outcome qf_cmd(const RunConfig& cfg, const Family& f) {
  const auto r = q_f(f, cfg.width);
  Outcome o;
  std::string weights;
  for (const auto& [m, w] : r.lower_cover.weights) weights += f.ground().render(m) + ":" + to_string(w) + " ";
  o.table = Table().row("family", family_id(f)).row("q_f", show(r.enclosure)).row("fractional cover", weights).str();
  o.structured = io::to_json(r, f.ground());
  return o;
}

Outcome pc_cmd(const RunConfig& cfg, const Family& f) {
  const auto e = p_c(f, cfg.width);
  Outcome o;
  o.table = Table().row("family", family_id(f)).row("p_c", show(e)).str();
  o.structured = io::to_json(e);
  return o;
}

Outcome min_cover_cmd(const RunConfig& cfg, const Family& f) {
  const Rational& q = require_q(cfg);
  const auto r = min_cost_cover(f, q);
  Outcome o;
  o.table = Table()
                .row("family", family_id(f))
                .row("q", to_string(q))
                .row("cost", to_string(r.cost) + "  ~" + io::approx(r.cost))
                .row("cover", show_cover(r.cover, f.ground()))
                .str();
  o.structured = Json{{"q", to_string(q)}, {"cost", to_string(r.cost)}, {"cover", io::to_json(r.cover, f.ground())}};
  return o;
}

Outcome cheapest_cmd(const RunConfig& cfg, const Family& f) {
  if (!cfg.all) return min_cover_cmd(cfg, f);
  const Rational& q = require_q(cfg);
  const auto r = enumerate_cheapest_covers(f, q, cfg.limit);
  Outcome o;
  Table t;
  t.row("family", family_id(f)).row("q", to_string(q)).row("cost", to_string(r.cost));
  t.row("optima", std::to_string(r.covers.size()) + (r.truncated ? " (limit reached, list incomplete)" : ""));
  o.table = t.str();
  Json covers = Json::array();
  for (const auto& c : r.covers) {
    o.table += show_cover(c, f.ground()) + "\n";
    covers.push_back(io::to_json(c, f.ground()));
  }
  o.structured = Json{{"q", to_string(q)}, {"cost", to_string(r.cost)}, {"truncated", r.truncated}, {"covers", covers}};
  return o;
}

Outcome verify_bounds_cmd(const RunConfig& cfg, const Family& f) {
  const auto r = check_bounds(f, cfg.K, cfg.width);
  Outcome o;
  Table t;
  t.row("family", r.family_id).row("l", std::to_string(r.l)).row("K", to_string(r.K));
  t.row("p_c", show(r.p_c)).row("q_c", show(r.q_c)).row("q_f", show(r.q_f));
  for (const auto& c : r.checks) {
    std::string v(to_string(c.verdict));
    if (c.verdict != Verdict::Skipped) {
      v += "  lhs ~" + io::approx(c.lhs.hi) + "  rhs ~" + io::approx(c.rhs.lo);
      if (c.exact) v += "  (exact)";
    }
    if (!c.note.empty()) v += "  (" + c.note + ")";
    t.row(c.name, v);
  }
  if (r.trivial_tighter_than_exponential) {
    t.row("trivial vs exponential", *r.trivial_tighter_than_exponential ? "trivial bound is tighter" : "exponential bound is tighter");
  }
  o.table = t.str();
  o.structured = io::to_json(r);
  if (r.any_violated()) o.code = kViolated;
  return o;
}

Outcome verify_scaling_cmd(const RunConfig& cfg, const Family& f) {
  const auto r = check_clone_scaling(f, cfg.k, cfg.width);
  Outcome o;
  Table t;
  t.row("family", r.family_id).row("k", std::to_string(r.k));
  t.row("q_c(F)", show(r.qc_base)).row("q_c(F_k)", show(r.qc_clone));
  t.row("q_f(F)", show(r.qf_base)).row("q_f(F_k)", show(r.qf_clone));
  t.row("p_c(F)", show(r.pc_base)).row("p_c(F_k)", show(r.pc_clone));
  for (const auto& x : r.residuals) {
    std::string v(to_string(x.verdict));
    if (x.verdict != Verdict::Skipped) {
      v += x.value.is_point() ? "  residual " + to_string(x.value.lo)
                              : "  residual in [" + io::approx(x.value.lo) + ", " + io::approx(x.value.hi) + "]";
    }
    t.row(x.name, v);
  }
  o.table = t.str();
  o.structured = io::to_json(r);
  if (r.any_violated()) o.code = kViolated;
  return o;
}

Outcome noncloned_cmd(const RunConfig& cfg, const Family& f) {
  const Rational& q = require_q(cfg);
  const auto r = find_noncloned_cheapest(f, cfg.k, q, cfg.limit);
  const auto c = clone_family(f, cfg.k);
  Outcome o;
  Table t;
  t.row("family", family_id(f)).row("k", std::to_string(cfg.k)).row("q", to_string(q)).row("min cost", to_string(r.cost));
  t.row("optima examined", std::to_string(r.optima) + (r.truncated ? " (limit reached)" : ""));
  if (r.witness) t.row("non-cloned optimum", show_cover(*r.witness, c.map.cloned()));
  else t.row("non-cloned optimum", r.truncated ? "none among examined optima (inconclusive)" : "none");
  o.table = t.str();
  o.structured = Json{{"k", cfg.k},
                      {"q", to_string(q)},
                      {"cost", to_string(r.cost)},
                      {"optima", r.optima},
                      {"truncated", r.truncated},
                      {"witness", r.witness ? io::to_json(*r.witness, c.map.cloned()) : Json(nullptr)}};
  return o;
}

Outcome symmetric_cmd(const RunConfig& cfg, const Family& f) {
  const Rational& q = require_q(cfg);
  if (!cfg.group_path) throw Error(ErrorKind::InvalidArgument, "command 'symmetric' needs --group");
  const auto group = io::group_from_json(io::read_json_file(*cfg.group_path), f.ground());
  const auto r = symmetric_cheapest_exists(f, group, q);
  Outcome o;
  Table t;
  t.row("family", family_id(f)).row("q", to_string(q)).row("min cost", to_string(r.optimum));
  t.row("min symmetric cost", to_string(r.symmetric_optimum));
  t.row("symmetric cheapest", r.exists ? "yes " + show_cover(*r.witness, f.ground()) : "no");
  o.table = t.str();
  o.structured = Json{{"q", to_string(q)},
                      {"cost", to_string(r.optimum)},
                      {"symmetric_cost", to_string(r.symmetric_optimum)},
                      {"exists", r.exists},
                      {"witness", r.witness ? io::to_json(*r.witness, f.ground()) : Json(nullptr)}};
  return o;
}

Outcome extract_cmd(const RunConfig& cfg, const Family& f) {
  const Rational& q = require_q(cfg);
  if (!cfg.cover_path) throw Error(ErrorKind::InvalidArgument, "command 'extract' needs --cover");
  const CloneMap cm(f.ground(), cfg.k);
  const Cover h = io::cover_from_json(io::read_json_file(*cfg.cover_path), cm.cloned());
  const auto r = extract_base_cover(h, f, cm, q);
  Outcome o;
  std::string sel;
  for (std::size_t x = 0; x < r.selection.copy.size(); ++x) {
    sel += (x ? "," : "") + cm.cloned().label(cm.clone_index(x, r.selection.copy[x]));
  }
  o.table = Table()
                .row("selection", "{" + sel + "}")
                .row("base cover", show_cover(r.cover, f.ground()))
                .row("cost at kq", to_string(r.cost))
                .row("cost of H at q", to_string(r.budget))
                .str();
  o.structured = Json{{"selection", cm.cloned().labels_of(r.selection.mask(cm))},
                      {"cover", io::to_json(r.cover, f.ground())},
                      {"cost", to_string(r.cost)},
                      {"budget", to_string(r.budget)}};
  return o;
}

Outcome falsify_cmd(const RunConfig& cfg, const std::string& path) {
  const Json j = io::read_json_file(path);
  if (!j.contains("ground")) throw Error(ErrorKind::Parse, path + ": group file needs a \"ground\" list");
  GroundSet ground(j.at("ground").get<std::vector<std::string>>());
  const auto group = io::group_from_json(j, ground);
  const auto found = falsify_symmetry(ground.size(), group, cfg.trials, cfg.seed);
  Outcome o;
  Table t;
  t.row("n", std::to_string(ground.size())).row("trials", std::to_string(cfg.trials)).row("seed", std::to_string(cfg.seed));
  t.row("counterexamples", std::to_string(found.size()));
  o.table = t.str();
  Json list = Json::array();
  for (const auto& c : found) {
    o.table += family_id(c.family) + "  q=" + to_string(c.q) + "  min " + to_string(c.optimum) + " < symmetric " +
               to_string(c.symmetric_optimum) + "\n";
    list.push_back(Json{{"family", io::to_json(c.family)},
                        {"q", to_string(c.q)},
                        {"cost", to_string(c.optimum)},
                        {"symmetric_cost", to_string(c.symmetric_optimum)}});
  }
  o.structured = Json{{"n", ground.size()}, {"trials", cfg.trials}, {"seed", cfg.seed}, {"counterexamples", list}};
  return o;
}

using Handler = Outcome (*)(const RunConfig&, const Family&);

Handler handler_for(const std::string& command) {
  static const std::vector<std::pair<std::string, Handler>> table = {
      {"analyze", analyze},
      {"clone", clone_cmd},
      {"qc", qc_cmd},
      {"qf", qf_cmd},
      {"pc", pc_cmd},
      {"min-cover", min_cover_cmd},
      {"cheapest", cheapest_cmd},
      {"verify-bounds", verify_bounds_cmd},
      {"verify-scaling", verify_scaling_cmd},
      {"noncloned", noncloned_cmd},
      {"symmetric", symmetric_cmd},
      {"extract", extract_cmd},
  };
  for (const auto& [name, h] : table) {
    if (name == command) return h;
  }
  return nullptr;
}

Outcome process(const RunConfig& cfg, const std::string& path) {
  try {
    if (cfg.command == "falsify-symmetry") return falsify_cmd(cfg, path);
    const Family f = io::read_family_file(path);
    return handler_for(cfg.command)(cfg, f);
  } catch (const Error& e) {
    Outcome o;
    o.code = code_for(e.kind());
    std::string msg = e.what();
    if (msg.find(path) == std::string::npos) msg = path + ": " + msg;
    o.table = "error: " + msg + "\n";
    o.structured = Json{{"error", std::string(to_string(e.kind()))}, {"message", msg}};
    return o;
  }
}

std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<std::string> files;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<std::string> dir;
      for (const auto& entry : fs::directory_iterator(in)) {
        if (entry.is_regular_file()) dir.push_back(entry.path().string());
      }
      std::sort(dir.begin(), dir.end());
      files.insert(files.end(), dir.begin(), dir.end());
    } else {
      files.push_back(in);
    }
  }
  return files;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.command != "falsify-symmetry" && !handler_for(cfg.command)) {
    err << "threshkit: unknown command '" << cfg.command << "'\n";
    return kInputError;
  }
  if (cfg.width <= 0) {
    err << "threshkit: --width must be positive\n";
    return kInputError;
  }
  if (cfg.k < 1) {
    err << "threshkit: -k must be at least 1\n";
    return kInputError;
  }
  const auto files = expand_inputs(cfg.inputs);
  if (files.empty()) {
    err << "threshkit: no input files\n";
    return kInputError;
  }

  // Files are independent; results are gathered back in filename order.
  std::vector<Outcome> results(files.size());
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(files.size(), std::thread::hardware_concurrency()));
  {
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i; (i = next++) < files.size();) results[i] = process(cfg, files[i]);
    };
    std::vector<std::future<void>> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.push_back(std::async(std::launch::async, work));
    work();
    for (auto& f : pool) f.get();
  }

  int code = kOk;
  const bool batch = files.size() > 1;
  Json all = Json::array();
  for (std::size_t i = 0; i < files.size(); ++i) {
    const auto& r = results[i];
    code = std::max(code, r.code);
    const bool failed = r.structured.is_object() && r.structured.contains("error");
    if (cfg.format == Format::Structured) {
      if (batch) all.push_back(Json{{"file", files[i]}, {"result", r.structured}});
    } else {
      if (batch) out << "== " << files[i] << "\n";
      (failed ? err : out) << (failed ? "threshkit: " : "") << r.table;
      if (batch && i + 1 < files.size()) out << "\n";
    }
    if (failed && cfg.format == Format::Structured) err << "threshkit: " << r.table;
  }
  if (cfg.format == Format::Structured) out << (batch ? all : results.front().structured).dump(2) << "\n";
  return code;
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact thresholds, expectation thresholds and cloning checks for increasing families"};
  RunConfig cfg;
  std::string width, q, K, format = "table";
  app.add_option("command", cfg.command,
                 "analyze | clone | qc | qf | pc | min-cover | cheapest | verify-bounds | verify-scaling | "
                 "noncloned | symmetric | extract | falsify-symmetry")
      ->required();
  app.add_option("inputs", cfg.inputs, "family files or directories (a group file for falsify-symmetry)")->required();
  app.add_option("--width", width, "enclosure width, e.g. 2^-20 or 1/1024");
  app.add_option("-k", cfg.k, "clone count");
  app.add_option("-q", q, "probability in (0, 1), e.g. 1/4");
  app.add_option("-K", K, "constant in the bound checks (default 16)");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--limit", cfg.limit, "maximum number of cheapest covers to enumerate");
  app.add_option("--trials", cfg.trials, "falsify-symmetry trials");
  app.add_flag("--all", cfg.all, "cheapest: list every optimum");
  app.add_option("--group", cfg.group_path, "group file (symmetric)");
  app.add_option("--cover", cfg.cover_path, "cover file over the cloned ground set (extract)");
  app.add_option("--format", format, "table or structured")->check(CLI::IsMember({"table", "structured"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInputError;
  }
  try {
    if (!width.empty()) cfg.width = parse_rational(width);
    if (!q.empty()) cfg.q = parse_rational(q);
    if (!K.empty()) cfg.K = parse_rational(K);
  } catch (const Error& e) {
    err << "threshkit: " << e.what() << "\n";
    return kInputError;
  }
  cfg.format = format == "structured" ? Format::Structured : Format::Table;
  return run(cfg, out, err);
}

}  // namespace threshkit::cli
