#include "relator/commands.hpp"

#include <chrono>
#include <numeric>
#include <sstream>

#include "relator/embed.hpp"
#include "relator/kernel.hpp"
#include "relator/quotients.hpp"
#include "relator/weights.hpp"

namespace relator::commands {

using nlohmann::json;

namespace {

std::string fnv1a(const std::string& text) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

std::string mixed_text(const MixedWord& w) {
  std::string out;
  for (const auto& it : w) {
    if (!out.empty()) out += " ";
    if (it.is_letter) {
      out += it.sl.letter;
      if (it.sl.exp == -1) out += "^-1";
    } else {
      out += "{" + it.h + "}";
    }
  }
  return out.empty() ? "1" : out;
}

std::string relator_text(const CoeffGroup& H, const RelativeRelator& r) {
  MixedWord items;
  for (const auto& t : r.terms) {
    items.push_back(MixedItem::of_letter(t.sl));
    if (!H.is_identity(t.h)) items.push_back(MixedItem::of_coeff(t.h));
  }
  return mixed_text(items);
}

json presentation_json(const RelativePresentation& p) {
  json j;
  j["letters"] = p.alphabet;
  j["group"] = p.group->describe();
  json rels = json::array();
  for (const auto& r : p.relators) rels.push_back(relator_text(*p.group, r));
  j["relators"] = rels;
  return j;
}

json certificate_json(const weights::MaxMinCertificate& c) {
  json j;
  json theta;
  for (const auto& [x, v] : c.theta.values) theta[x] = v;
  j["theta"] = theta;
  j["k"] = c.k;
  j["l"] = c.l;
  j["class"] = weights::to_string(c.achieved);
  j["verified"] = c.verified;
  return j;
}

std::optional<weights::MaxMinCertificate> best_certificate(const Word& w,
                                                           bool oracle,
                                                           int bound) {
  using weights::MaxMinClass;
  for (auto target : {MaxMinClass::StrongUniqueMaxMin,
                      MaxMinClass::UniqueMaxMin, MaxMinClass::UniqueMin}) {
    auto got = oracle ? weights::brute_force_certificate(w, target, bound)
                      : weights::search_certificate(w, target);
    if (got) return got;
  }
  return std::nullopt;
}

MixedWord resolve_query(const dsl::Document& doc, const std::string& arg) {
  if (const MixedWord* w = doc.find_word(arg)) return *w;
  return doc.parse_query(arg);
}

struct GBarBundle {
  embed::ToStrongResult ts;
  kernel::KernelData data;
  std::unique_ptr<kernel::GBar> gbar;

  MixedWord up(const MixedWord& w) const {
    return fp_to_mixed(apply_hom(ts.pair.mu, w));
  }
  kernel::GBarElement embed_word(const MixedWord& w) const {
    return gbar->embed(up(w));
  }
};

// The word-problem pipeline: strengthen the presentation, designate e, run
// the collapse, and read words through the section.
GBarBundle make_gbar(const RelativePresentation& p, int window) {
  GBarBundle b;
  b.ts = embed::to_strong(p);
  if (!b.ts.found)
    throw Error("no unique max-min certificate: word problem unavailable");
  kernel::KernelOptions ko;
  ko.window = window;
  ko.designated_e = b.ts.e;
  kernel::Extremes ex = kernel::extremes(b.ts.presentation, ko);
  if (ex.trivial_case)
    throw Error("trivial case (M - m = 1): use the free-product structure");
  b.data = kernel::decompose(b.ts.presentation, ko);
  b.gbar = std::make_unique<kernel::GBar>(b.data, window);
  return b;
}

json gbar_element_json(const kernel::GBarElement& g) {
  json j;
  j["u"] = fp_to_string(g.u);
  j["n"] = g.n;
  return j;
}

Outcome cmd_classify(const dsl::Document& doc, const Options& opts, json& j) {
  RelativePresentation p = doc.presentation();
  Word W = skeleton(p.relators[0]);
  j["word"] = to_string(W);
  j["length"] = W.size();
  j["search"] = opts.oracle ? "brute-force" : "exact-feasibility";
  auto cert = best_certificate(W, opts.oracle, opts.weight_bound);
  if (!cert) {
    j["class"] = "none";
    return {j, kAbsent};
  }
  j["class"] = weights::to_string(cert->achieved);
  j["certificate"] = certificate_json(*cert);
  return {j, kOk};
}

Outcome cmd_embed(const dsl::Document& doc, const Options& opts, json& j) {
  (void)opts;
  RelativePresentation p = doc.presentation();
  auto ts = embed::to_strong(p);
  if (!ts.found) {
    j["found"] = false;
    return {j, kAbsent};
  }
  j["found"] = true;
  j["e"] = ts.e;
  json chain = json::array();
  for (const auto& st : ts.chain) {
    json stage;
    stage["stage"] = st.stage;
    stage["presentation"] = presentation_json(st.presentation);
    chain.push_back(stage);
  }
  j["chain"] = chain;
  j["result"] = presentation_json(ts.presentation);
  j["retraction_verified"] = ts.pair.roundtrip_verified;
  json rho, mu;
  for (const auto& [x, img] : ts.pair.mu.images) mu[x] = fp_to_string(img);
  for (const auto& [x, img] : ts.pair.rho.images) rho[x] = fp_to_string(img);
  j["mu"] = mu;
  j["rho"] = rho;
  return {j, kOk};
}

Outcome cmd_kernel(const dsl::Document& doc, const Options& opts, json& j) {
  RelativePresentation p = doc.presentation();
  auto ts = embed::to_strong(p);
  if (!ts.found) {
    j["found"] = false;
    return {j, kAbsent};
  }
  kernel::KernelOptions ko;
  ko.window = opts.window;
  ko.designated_e = ts.e;
  kernel::Extremes ex = kernel::extremes(ts.presentation, ko);
  j["M"] = ex.M;
  j["m"] = ex.m;
  j["e"] = ex.e;
  if (ex.trivial_case) {
    j["trivial_case"] = true;
    j["free_factor"] = ex.phi_letters;
    j["structure"] = "free product of a free group with the coefficient group";
    return {j, kOk};
  }
  j["trivial_case"] = false;
  kernel::KernelData d = kernel::decompose(ts.presentation, ko);
  j["f"] = d.f;
  j["eps"] = d.eps;
  j["a"] = d.a;
  j["b"] = d.b;
  j["h"] = d.h;
  j["h_prime"] = d.hprime;
  j["rotation"] = d.rotation;
  j["inverted"] = d.inverted;
  j["normalized_relator"] = relator_text(*d.source.group, d.normalized);
  j["stable"] = d.stable;
  j["f0_basis"] = d.f0_letters;
  kernel::CollapsedRelator r0 = kernel::collapse(d, 0);
  j["R_0"] = kernel::to_string(r0.items);
  j["alpha_0"] = kernel::to_string(r0.alpha);
  j["beta_0"] = kernel::to_string(r0.beta);
  auto rep = kernel::verify_iso(d, opts.window);
  j["verify"] = {{"V1", rep.v1}, {"V2", rep.v2}, {"V3", rep.v3}};
  return {j, rep.pass() ? kOk : kError};
}

Outcome cmd_eq(const dsl::Document& doc, const Options& opts, json& j) {
  if (opts.args.size() != 2) throw Error("eq expects two words");
  RelativePresentation p = doc.presentation();
  MixedWord w1 = resolve_query(doc, opts.args[0]);
  MixedWord w2 = resolve_query(doc, opts.args[1]);
  GBarBundle b = make_gbar(p, opts.window);
  auto g1 = b.embed_word(w1);
  auto g2 = b.embed_word(w2);
  j["w1"] = mixed_text(w1);
  j["w2"] = mixed_text(w2);
  j["normal_form_1"] = gbar_element_json(g1);
  j["normal_form_2"] = gbar_element_json(g2);
  bool eq = g1 == g2;
  j["equal"] = eq;
  return {j, eq ? kOk : kAbsent};
}

Outcome cmd_separate(const dsl::Document& doc, const Options& opts, json& j) {
  if (opts.args.size() != 1) throw Error("separate expects one word");
  RelativePresentation p = doc.presentation();
  MixedWord w = resolve_query(doc, opts.args[0]);
  j["word"] = mixed_text(w);

  std::function<bool(const MixedWord&, const MixedWord&)> oracle;
  try {
    auto b = std::make_shared<GBarBundle>(make_gbar(p, opts.window));
    oracle = [b](const MixedWord& a, const MixedWord& c) {
      return b->embed_word(a) == b->embed_word(c);
    };
    j["oracle"] = "normal-form";
  } catch (const Error&) {
    j["oracle"] = "none";
  }

  auto res = quotients::separate(p, w, opts.degree_bound, {}, oracle);
  j["nodes"] = res.nodes;
  j["partial"] = res.partial;
  if (res.query_trivial) {
    j["result"] = "trivial-in-group";
    return {j, kAbsent};
  }
  if (!res.found) {
    j["result"] = "none-within-bound";
    return {j, kAbsent};
  }
  j["result"] = "separated";
  json wit;
  wit["degree"] = res.witness.degree;
  wit["coeff_hom"] = res.witness.coeff_hom_name;
  json imgs;
  for (const auto& [x, perm] : res.witness.letter_images)
    imgs[x] = quotients::perm_cycles(perm);
  wit["letter_images"] = imgs;
  wit["check_log"] = res.witness.check_log;
  j["witness"] = wit;
  return {j, kOk};
}

Outcome cmd_subst(const dsl::Document& doc, const Options& opts, json& j) {
  if (opts.args.size() != 3)
    throw Error("subst expects: outer-relator letter inner-relator");
  const RelativeRelator* S = doc.find_relator(opts.args[0]);
  const RelativeRelator* R = doc.find_relator(opts.args[2]);
  if (!S || !R) throw Error("subst: unknown relator name");
  const CoeffGroup& H = *doc.group;
  RelativeRelator out = substitute(H, *S, opts.args[1], *R);
  j["outer"] = relator_text(H, *S);
  j["inner"] = relator_text(H, *R);
  j["letter"] = opts.args[1];
  j["result"] = relator_text(H, out);
  j["skeleton"] = to_string(skeleton(out));
  return {j, kOk};
}

Outcome cmd_power(const dsl::Document& doc, const Options& opts, json& j) {
  if (opts.args.size() != 2) throw Error("power expects: relator exponent");
  const RelativeRelator* R = doc.find_relator(opts.args[0]);
  if (!R) throw Error("power: unknown relator name");
  long long n = std::stoll(opts.args[1]);
  const CoeffGroup& H = *doc.group;
  RelativeRelator out = power(H, *R, n);
  j["relator"] = relator_text(H, *R);
  j["exponent"] = n;
  j["result"] = relator_text(H, out);
  return {j, kOk};
}

Outcome cmd_brown(const dsl::Document& doc, const Options& opts, json& j) {
  RelativePresentation p = restrict_alphabet(doc.presentation()).restricted;
  Word W = skeleton(p.relators[0]);
  j["word"] = to_string(W);
  std::map<std::string, int> vals;
  if (!opts.args.empty()) {
    for (const auto& a : opts.args) {
      size_t eq = a.find('=');
      if (eq == std::string::npos)
        throw Error("brown: weight arguments look like letter=value");
      vals[a.substr(0, eq)] = std::stoi(a.substr(eq + 1));
    }
  } else {
    // canonical admissible weight from the exponent sums
    std::map<std::string, long long> sums;
    for (const auto& x : p.alphabet) sums[x] = 0;
    for (const auto& s : W.syllables) sums[s.letter] += s.exp;
    if (p.alphabet.size() != 2)
      throw Error("brown: supply explicit weights for |x| != 2");
    long long sx = sums[p.alphabet[0]], sy = sums[p.alphabet[1]];
    if (sx == 0 && sy == 0)
      throw Error("brown: exponent sums vanish; supply explicit weights");
    long long g = std::gcd(std::abs(sx), std::abs(sy));
    vals[p.alphabet[0]] = (int)(-sy / g);
    vals[p.alphabet[1]] = (int)(sx / g);
    if (vals[p.alphabet[0]] == 0 || vals[p.alphabet[1]] == 0)
      throw Error("brown: canonical weight is not strict; supply weights");
  }
  auto theta = weights::make_weight(vals);
  json tj;
  for (const auto& [x, v] : theta.values) tj[x] = v;
  j["theta"] = tj;
  bool fg = weights::brown_kernel_fg(W, theta, (int)p.alphabet.size());
  j["kernel_finitely_generated"] = fg;
  return {j, fg ? kOk : kAbsent};
}

}  // namespace

Outcome run(const dsl::Document& doc, const Options& opts) {
  json j;
  j["schema"] = kSchema;
  j["command"] = opts.command;
  j["input_digest"] = fnv1a(doc.source);
  j["flags"] = {{"window", opts.window},
                {"degree_bound", opts.degree_bound},
                {"weight_bound", opts.weight_bound},
                {"oracle", opts.oracle}};
  auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    if (opts.command == "classify") out = cmd_classify(doc, opts, j);
    else if (opts.command == "embed") out = cmd_embed(doc, opts, j);
    else if (opts.command == "kernel") out = cmd_kernel(doc, opts, j);
    else if (opts.command == "eq") out = cmd_eq(doc, opts, j);
    else if (opts.command == "separate") out = cmd_separate(doc, opts, j);
    else if (opts.command == "subst") out = cmd_subst(doc, opts, j);
    else if (opts.command == "power") out = cmd_power(doc, opts, j);
    else if (opts.command == "brown") out = cmd_brown(doc, opts, j);
    else throw Error("unknown command: " + opts.command);
  } catch (const Error& ex) {
    j["error"] = ex.what();
    out = {j, kError};
  }
  if (opts.timing) {
    auto dt = std::chrono::steady_clock::now() - t0;
    out.report["elapsed_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(dt).count();
  }
  return out;
}

namespace {

void render_node(std::ostringstream& os, const json& node, int indent) {
  std::string pad(indent * 2, ' ');
  if (node.is_object()) {
    for (auto it = node.begin(); it != node.end(); ++it) {
      if (it.value().is_object() || it.value().is_array()) {
        os << pad << it.key() << ":\n";
        render_node(os, it.value(), indent + 1);
      } else {
        os << pad << it.key() << ": " << it.value().dump() << "\n";
      }
    }
  } else if (node.is_array()) {
    for (const auto& v : node) {
      if (v.is_object() || v.is_array()) {
        os << pad << "-\n";
        render_node(os, v, indent + 1);
      } else {
        os << pad << "- " << v.dump() << "\n";
      }
    }
  } else {
    os << pad << node.dump() << "\n";
  }
}

}  // namespace

std::string render_text(const nlohmann::json& report) {
  std::ostringstream os;
  render_node(os, report, 0);
  return os.str();
}

std::string render(const nlohmann::json& report, const std::string& format) {
  if (format == "machine") return report.dump(2) + "\n";
  if (format == "text") return render_text(report);
  throw Error("unknown format: " + format);
}

}  // namespace relator::commands
