#include "threshkit/io.hpp"

#include <fstream>
#include <sstream>

#include "threshkit/error.hpp"

namespace threshkit::io {

namespace {

std::vector<std::string> labels_from(const Json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, std::string(what) + " must be a list of labels");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (x.is_string()) out.push_back(x.get<std::string>());
    else if (x.is_number_integer()) out.push_back(std::to_string(x.get<long long>()));
    else throw Error(ErrorKind::Parse, std::string(what) + " entries must be strings");
  }
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::Parse, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

std::string approx(const Rational& r) { return to_decimal(r, 6); }

Family family_from_json(const Json& j) {
  GroundSet ground(labels_from(field(j, "ground"), "ground"));
  const Json& gens = field(j, "generators");
  if (!gens.is_array()) throw Error(ErrorKind::Parse, "generators must be a list");
  std::vector<Mask> raw;
  for (const auto& g : gens) raw.push_back(ground.mask_of(labels_from(g, "generator")));
  return normalize(raw, ground);
}

Json to_json(const Family& family) {
  Json gens = Json::array();
  for (Mask g : family.generators()) gens.push_back(family.ground().labels_of(g));
  return Json{{"ground", family.ground().labels()}, {"generators", gens}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, path.string() + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::Parse, path.string() + ": " + e.what());
  }
}

Family read_family_file(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  try {
    return family_from_json(j);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

Json to_json(const Cover& cover, const GroundSet& ground) {
  Json out = Json::array();
  for (Mask m : cover.members()) out.push_back(ground.labels_of(m));
  return out;
}

Cover cover_from_json(const Json& j, const GroundSet& ground) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "a cover must be a list of label lists");
  std::vector<Mask> members;
  for (const auto& m : j) members.push_back(ground.mask_of(labels_from(m, "cover member")));
  return Cover(std::move(members));
}

Json to_json(const FractionalCover& cover, const GroundSet& ground) {
  Json out = Json::object();
  for (const auto& [m, w] : cover.weights) out[ground.render(m)] = to_string(w);
  return out;
}

Json to_json(const Enclosure& e) {
  return Json{{"kind", std::string(to_string(e.kind))},
              {"lo", to_string(e.lo)},
              {"hi", to_string(e.hi)},
              {"exact", e.is_point()},
              {"approx", approx((e.lo + e.hi) / 2)}};
}

Json to_json(const Interval& iv) {
  return Json{{"lo", to_string(iv.lo)}, {"hi", to_string(iv.hi)}, {"approx", approx((iv.lo + iv.hi) / 2)}};
}

Json to_json(const CloneMap& cm) { return Json{{"base", cm.base().labels()}, {"k", cm.k()}}; }

CloneMap clone_map_from_json(const Json& j) {
  const Json& k = field(j, "k");
  if (!k.is_number_integer() || k.get<long long>() < 1) throw Error(ErrorKind::FibreError, "k must be a positive integer");
  return CloneMap(GroundSet(labels_from(field(j, "base"), "base")), static_cast<std::size_t>(k.get<long long>()));
}

PermutationGroup group_from_json(const Json& j, const GroundSet& ground) {
  if (j.contains("ground") && !(GroundSet(labels_from(j.at("ground"), "ground")) == ground)) {
    throw Error(ErrorKind::GroundMismatch, "group ground set differs from the family's");
  }
  const Json& gens = field(j, "generators");
  if (!gens.is_array()) throw Error(ErrorKind::Parse, "group generators must be a list");
  std::vector<PermutationGroup::Permutation> perms;
  for (const auto& g : gens) {
    if (!g.is_array()) throw Error(ErrorKind::Parse, "a group generator must be a list of cycles");
    PermutationGroup::Permutation p(ground.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = i;
    std::vector<char> moved(ground.size(), 0);
    for (const auto& cycle : g) {
      auto labels = labels_from(cycle, "cycle");
      std::vector<std::size_t> idx;
      for (const auto& l : labels) {
        auto i = ground.index_of(l);
        if (!i) throw Error(ErrorKind::ForeignElement, "unknown label \"" + l + "\" in a cycle");
        if (moved[*i]) throw Error(ErrorKind::InvalidArgument, "label \"" + l + "\" appears twice in one generator");
        moved[*i] = 1;
        idx.push_back(*i);
      }
      for (std::size_t c = 0; c < idx.size(); ++c) p[idx[c]] = idx[(c + 1) % idx.size()];
    }
    perms.push_back(std::move(p));
  }
  return PermutationGroup(ground.size(), std::move(perms));
}

Json to_json(const QcResult& r, const GroundSet& ground) {
  const auto& c = r.certificates;
  return Json{{"enclosure", to_json(r.enclosure)},
              {"lower",
               {{"q", to_string(c.lower_q)}, {"cover", to_json(c.lower_cover, ground)}, {"cost", to_string(c.lower_cost)}}},
              {"upper", {{"q", to_string(c.upper_q)}, {"proof", c.upper_proof}}}};
}

Json to_json(const QfResult& r, const GroundSet& ground) {
  return Json{{"enclosure", to_json(r.enclosure)},
              {"lower",
               {{"q", to_string(r.enclosure.lo)},
                {"fractional_cover", to_json(r.lower_cover, ground)},
                {"cost", to_string(r.lower_cost)}}}};
}

Json to_json(const BoundReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json x{{"name", c.name}, {"verdict", std::string(to_string(c.verdict))}};
    if (c.verdict != Verdict::Skipped) {
      x["lhs"] = to_json(c.lhs);
      x["rhs"] = to_json(c.rhs);
      x["exact"] = c.exact;
    }
    if (!c.note.empty()) x["note"] = c.note;
    checks.push_back(std::move(x));
  }
  Json out{{"family", r.family_id},
           {"l", r.l},
           {"K", to_string(r.K)},
           {"width", to_string(r.width)},
           {"refinements", r.refinements},
           {"p_c", to_json(r.p_c)},
           {"q_c", to_json(r.q_c)},
           {"q_f", to_json(r.q_f)},
           {"checks", checks}};
  if (r.trivial_tighter_than_exponential) out["trivial_tighter_than_exponential"] = *r.trivial_tighter_than_exponential;
  return out;
}

Json to_json(const ScalingReport& r) {
  Json residuals = Json::array();
  for (const auto& x : r.residuals) {
    Json e{{"name", x.name}, {"verdict", std::string(to_string(x.verdict))}};
    if (x.verdict != Verdict::Skipped) e["value"] = to_json(x.value);
    residuals.push_back(std::move(e));
  }
  Json out{{"family", r.family_id}, {"k", r.k}};
  out["q_c"] = {{"base", to_json(r.qc_base)}, {"clone", to_json(r.qc_clone)}};
  if (r.residuals.size() > 1 && r.residuals[1].verdict != Verdict::Skipped) {
    out["q_f"] = {{"base", to_json(r.qf_base)}, {"clone", to_json(r.qf_clone)}};
  }
  out["p_c"] = {{"base", to_json(r.pc_base)}, {"clone", to_json(r.pc_clone)}};
  out["residuals"] = residuals;
  return out;
}

}  // namespace threshkit::io
