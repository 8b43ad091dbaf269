#include "eqfg/groupoid.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "eqfg/error.hpp"

namespace eqfg {

namespace {

template <typename T>
std::size_t at(T i) {
  return static_cast<std::size_t>(i);
}

// Relators longer than this stop Tietze elimination.
constexpr std::size_t kMaxRelatorLength = 4096;

}  // namespace

std::optional<int> PresentedGroupoid::find_object(std::string_view label) const {
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (objects[i] == label) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> PresentedGroupoid::find_generator(std::string_view label) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i].label == label) return static_cast<int>(i);
  return std::nullopt;
}

PresentedGroupoid one_object_groupoid(const std::string& object,
                                      const std::vector<std::string>& generators,
                                      const std::vector<GroupWord>& relators) {
  PresentedGroupoid p;
  p.objects = {object};
  for (const auto& g : generators) p.generators.push_back({g, 0, 0});
  for (const auto& r : relators) p.relators.push_back({0, r});
  return p;
}

int letter_source(const PresentedGroupoid& p, const Letter& l) {
  const auto& g = p.generators.at(at(l.generator));
  return l.exponent > 0 ? g.source : g.target;
}

int letter_target(const PresentedGroupoid& p, const Letter& l) {
  const auto& g = p.generators.at(at(l.generator));
  return l.exponent > 0 ? g.target : g.source;
}

int word_end(const PresentedGroupoid& p, const Word& w) {
  if (w.start < 0 || w.start >= p.object_count())
    throw Error("NotComposable", "word starts at unknown object " + std::to_string(w.start));
  int here = w.start;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    const auto& l = w.letters[i];
    if (l.generator < 0 || l.generator >= p.generator_count() || (l.exponent != 1 && l.exponent != -1))
      throw Error("NotComposable", "malformed letter at position " + std::to_string(i));
    if (letter_source(p, l) != here)
      throw Error("NotComposable", "letter " + std::to_string(i) + " (" +
                                       p.generators[at(l.generator)].label + (l.exponent < 0 ? "^-1" : "") +
                                       ") starts at " + p.objects[at(letter_source(p, l))] +
                                       ", path is at " + p.objects[at(here)]);
    here = letter_target(p, l);
  }
  return here;
}

void validate_groupoid(const PresentedGroupoid& p) {
  std::set<std::string> seen;
  for (const auto& o : p.objects)
    if (!seen.insert(o).second) throw Error("DuplicateLabel", "object '" + o + "' declared twice");
  seen.clear();
  for (const auto& g : p.generators) {
    if (!seen.insert(g.label).second) throw Error("DuplicateLabel", "generator '" + g.label + "' declared twice");
    if (g.source < 0 || g.source >= p.object_count() || g.target < 0 || g.target >= p.object_count())
      throw Error("DanglingReference", "generator '" + g.label + "' has an endpoint outside the objects");
  }
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    const auto& r = p.relators[i];
    if (word_end(p, r) != r.start)
      throw Error("NotClosed", "relator " + std::to_string(i) + " (" + format_word(p, r) + ") is not a loop");
  }
}

GroupWord free_reduce(GroupWord w) {
  GroupWord out;
  out.reserve(w.size());
  for (const auto& l : w) {
    if (!out.empty() && out.back().generator == l.generator && out.back().exponent == -l.exponent)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word free_reduce(const PresentedGroupoid& p, const Word& w) {
  word_end(p, w);
  return {w.start, free_reduce(w.letters)};
}

GroupWord cyclic_reduce(GroupWord w) {
  w = free_reduce(std::move(w));
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[lo].generator == w[hi - 1].generator && w[lo].exponent == -w[hi - 1].exponent) {
    ++lo;
    --hi;
  }
  return GroupWord(w.begin() + static_cast<std::ptrdiff_t>(lo), w.begin() + static_cast<std::ptrdiff_t>(hi));
}

GroupWord inverse(const GroupWord& w) {
  GroupWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

Word inverse(const PresentedGroupoid& p, const Word& w) {
  return {word_end(p, w), inverse(w.letters)};
}

Word concat(const PresentedGroupoid& p, const Word& a, const Word& b) {
  if (word_end(p, a) != b.start)
    throw Error("NotComposable", "cannot append " + format_word(p, b) + " to " + format_word(p, a));
  Word out = a;
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return out;
}

GroupWord substitute(const GroupWord& w, const std::vector<GroupWord>& images) {
  GroupWord out;
  for (const auto& l : w) {
    const auto& img = images.at(at(l.generator));
    if (l.exponent > 0)
      out.insert(out.end(), img.begin(), img.end());
    else
      for (auto it = img.rbegin(); it != img.rend(); ++it) out.push_back(it->inverse());
  }
  return free_reduce(std::move(out));
}

namespace {

bool letter_less(const Letter& a, const Letter& b) {
  if (a.generator != b.generator) return a.generator < b.generator;
  return a.exponent > b.exponent;
}

bool word_less(const GroupWord& a, const GroupWord& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), letter_less);
}

GroupWord rotate_copy(const GroupWord& w, std::size_t k) {
  GroupWord out(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
  return out;
}

}  // namespace

GroupWord canonical_cyclic(const GroupWord& w) {
  const GroupWord r = cyclic_reduce(w);
  if (r.empty()) return r;
  GroupWord best = r;
  for (const GroupWord& base : {r, inverse(r)})
    for (std::size_t k = 0; k < base.size(); ++k) {
      GroupWord c = rotate_copy(base, k);
      if (word_less(c, best)) best = std::move(c);
    }
  return best;
}

namespace {

std::string format_letter(const std::string& name, int exponent) {
  return exponent == 1 ? name : name + "^" + std::to_string(exponent);
}

// Collapses runs of the same generator into powers for readability.
std::string format_letters(const std::vector<Letter>& letters, const auto& name_of) {
  if (letters.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < letters.size()) {
    std::size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    if (!out.empty()) out += " ";
    out += format_letter(name_of(letters[i].generator), letters[i].exponent * static_cast<int>(j - i));
    i = j;
  }
  return out;
}

}  // namespace

std::string format_word(const PresentedGroupoid& p, const Word& w) {
  if (w.empty()) return w.start >= 0 && w.start < p.object_count() ? "1@" + p.objects[at(w.start)] : "1";
  return format_letters(w.letters, [&](int g) -> const std::string& { return p.generators.at(at(g)).label; });
}

std::string format_group_word(const std::vector<std::string>& names, const GroupWord& w) {
  return format_letters(w, [&](int g) -> const std::string& { return names.at(at(g)); });
}

GroupWord parse_group_word(std::string_view text, const std::vector<std::string>& names) {
  GroupWord out;
  std::istringstream in{std::string(text)};
  std::string token;
  std::vector<std::string> tokens;
  while (in >> token) tokens.push_back(token);
  if (tokens.size() == 1 && (tokens[0] == "1" || tokens[0].rfind("1@", 0) == 0) &&
      std::find(names.begin(), names.end(), tokens[0]) == names.end())
    return out;
  for (const auto& t : tokens) {
    std::string name = t;
    int power = 1;
    const auto caret = t.find('^');
    if (caret != std::string::npos) {
      name = t.substr(0, caret);
      const std::string exp = t.substr(caret + 1);
      auto [end, ec] = std::from_chars(exp.data(), exp.data() + exp.size(), power);
      if (ec != std::errc() || end != exp.data() + exp.size() || power == 0)
        throw Error("SyntaxError", "bad exponent in '" + t + "' of word '" + std::string(text) + "'");
    }
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
      throw Error("DanglingReference", "unknown generator '" + name + "' in word '" + std::string(text) + "'");
    const int g = static_cast<int>(it - names.begin());
    const int sign = power > 0 ? 1 : -1;
    for (int k = 0; k < power * sign; ++k) out.push_back({g, sign});
  }
  return out;
}

Word parse_word(const PresentedGroupoid& p, std::string_view text, std::optional<int> start) {
  std::vector<std::string> names;
  for (const auto& g : p.generators) names.push_back(g.label);
  Word w;
  w.letters = parse_group_word(text, names);
  if (w.letters.empty()) {
    // "1@obj" names the object explicitly.
    std::string t(text);
    const auto atpos = t.find('@');
    if (atpos != std::string::npos) {
      std::string obj = t.substr(atpos + 1);
      obj.erase(std::remove_if(obj.begin(), obj.end(), [](unsigned char c) { return std::isspace(c); }), obj.end());
      const auto o = p.find_object(obj);
      if (!o) throw Error("DanglingReference", "unknown object '" + obj + "'");
      if (start && *start != *o)
        throw Error("NotComposable", "empty word at " + obj + " where " + p.objects[at(*start)] + " is required");
      w.start = *o;
      return w;
    }
    if (!start) throw Error("SyntaxError", "empty word needs a base object: '" + t + "'");
    w.start = *start;
    return w;
  }
  w.start = letter_source(p, w.letters.front());
  if (start && *start != w.start)
    throw Error("NotComposable", "word '" + std::string(text) + "' starts at " + p.objects[at(w.start)] +
                                     ", expected " + p.objects[at(*start)]);
  word_end(p, w);
  return w;
}

Components components(const PresentedGroupoid& p) {
  const int n = p.object_count();
  std::vector<int> parent(at(n));
  for (int i = 0; i < n; ++i) parent[at(i)] = i;
  auto find = [&](int x) {
    while (parent[at(x)] != x) x = parent[at(x)] = parent[at(parent[at(x)])];
    return x;
  };
  for (const auto& g : p.generators) {
    const int a = find(g.source), b = find(g.target);
    if (a != b) parent[at(std::max(a, b))] = std::min(a, b);
  }
  Components c;
  c.component_of.assign(at(n), -1);
  std::map<int, int> index;
  for (int i = 0; i < n; ++i) {
    const int root = find(i);
    auto [it, fresh] = index.try_emplace(root, c.count());
    if (fresh) c.members.emplace_back();
    c.component_of[at(i)] = it->second;
    c.members[at(it->second)].push_back(i);
  }
  return c;
}

IntMatrix relator_matrix(const GroupPresentation& g) {
  IntMatrix m = IntMatrix::Zero(static_cast<Eigen::Index>(g.relators.size()),
                                static_cast<Eigen::Index>(g.generators.size()));
  for (std::size_t r = 0; r < g.relators.size(); ++r)
    for (const auto& l : g.relators[r]) m(static_cast<Eigen::Index>(r), l.generator) += l.exponent;
  return m;
}

AbelianGroup abelianization(const GroupPresentation& g) {
  return abelian_group_from_relations(relator_matrix(g), static_cast<Eigen::Index>(g.generators.size()));
}

SimplifiedPresentation simplify(const GroupPresentation& g) {
  const std::size_t n = g.generators.size();
  std::vector<GroupWord> subst(n);
  for (std::size_t i = 0; i < n; ++i) subst[i] = {Letter{static_cast<int>(i), 1}};
  std::vector<bool> alive(n, true);
  std::vector<GroupWord> rels;
  for (const auto& r : g.relators) {
    auto c = cyclic_reduce(r);
    if (!c.empty()) rels.push_back(std::move(c));
  }

  for (;;) {
    // Shortest relator with a generator occurring exactly once; highest
    // generator index within it.
    std::optional<std::size_t> pick_rel;
    int pick_gen = -1;
    for (std::size_t r = 0; r < rels.size(); ++r) {
      if (pick_rel && rels[r].size() >= rels[*pick_rel].size()) continue;
      std::map<int, int> count;
      for (const auto& l : rels[r]) ++count[l.generator];
      int best = -1;
      for (const auto& [gen, c] : count)
        if (c == 1) best = std::max(best, gen);
      if (best >= 0) {
        pick_rel = r;
        pick_gen = best;
      }
    }
    if (!pick_rel) break;

    const GroupWord rel = rels[*pick_rel];
    std::size_t pos = 0;
    while (rel[pos].generator != pick_gen) ++pos;
    // rel rotated = x^e · rest  =>  x = rest^-1 (e = 1) or rest (e = -1)
    const GroupWord rotated = rotate_copy(rel, pos);
    const GroupWord rest(rotated.begin() + 1, rotated.end());
    const GroupWord value = rotated.front().exponent > 0 ? inverse(rest) : rest;

    std::vector<GroupWord> images(n);
    for (std::size_t i = 0; i < n; ++i) images[i] = {Letter{static_cast<int>(i), 1}};
    images[at(pick_gen)] = value;

    std::vector<GroupWord> next;
    bool too_long = false;
    for (std::size_t r = 0; r < rels.size(); ++r) {
      if (r == *pick_rel) continue;
      auto c = cyclic_reduce(substitute(rels[r], images));
      if (c.size() > kMaxRelatorLength) too_long = true;
      if (!c.empty()) next.push_back(std::move(c));
    }
    if (too_long) break;
    rels = std::move(next);
    for (auto& s : subst) s = substitute(s, images);
    alive[at(pick_gen)] = false;
  }

  // Drop duplicates up to rotation and inversion, keeping first occurrences.
  std::set<std::vector<std::pair<int, int>>> seen;
  std::vector<GroupWord> unique;
  for (auto& r : rels) {
    std::vector<std::pair<int, int>> key;
    for (const auto& l : canonical_cyclic(r)) key.emplace_back(l.generator, l.exponent);
    if (seen.insert(key).second) unique.push_back(std::move(r));
  }

  std::vector<int> renumber(n, -1);
  SimplifiedPresentation out;
  for (std::size_t i = 0; i < n; ++i)
    if (alive[i]) {
      renumber[i] = static_cast<int>(out.presentation.generators.size());
      out.presentation.generators.push_back(g.generators[i]);
    }
  auto remap = [&](const GroupWord& w) {
    GroupWord o;
    o.reserve(w.size());
    for (const auto& l : w) o.push_back({renumber[at(l.generator)], l.exponent});
    return o;
  };
  for (const auto& r : unique) out.presentation.relators.push_back(remap(r));
  for (const auto& s : subst) out.substitution.push_back(remap(s));
  return out;
}

bool evidently_abelian(const GroupPresentation& g) {
  const std::size_t n = g.generators.size();
  if (n <= 1) return true;
  std::set<std::pair<int, int>> commuting;
  for (const auto& raw : g.relators) {
    const auto r = cyclic_reduce(raw);
    if (r.size() != 4) continue;
    if (r[0].generator == r[2].generator && r[1].generator == r[3].generator &&
        r[0].generator != r[1].generator && r[0].exponent == -r[2].exponent &&
        r[1].exponent == -r[3].exponent)
      commuting.insert(std::minmax(r[0].generator, r[1].generator));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!commuting.count({static_cast<int>(i), static_cast<int>(j)})) return false;
  return true;
}

GroupWord IsotropyPresentation::rewrite(const Word& loop) const {
  GroupWord out;
  for (const auto& l : loop.letters) {
    const int s = slot.at(at(l.generator));
    if (s >= 0) out.push_back({s, l.exponent});
  }
  return free_reduce(std::move(out));
}

Word IsotropyPresentation::loop(const PresentedGroupoid& p, int index) const {
  int gen = -1;
  for (std::size_t i = 0; i < slot.size(); ++i)
    if (slot[i] == index) gen = static_cast<int>(i);
  if (gen < 0) throw Error("OutOfRange", "no free generator " + std::to_string(index));
  const auto& g = p.generators[at(gen)];
  Word w = tree_path.at(at(g.source));
  w.letters.push_back({gen, 1});
  const auto back = inverse(tree_path.at(at(g.target)).letters);
  w.letters.insert(w.letters.end(), back.begin(), back.end());
  return free_reduce(p, w);
}

IsotropyPresentation isotropy_presentation(const PresentedGroupoid& p, int object) {
  if (object < 0 || object >= p.object_count())
    throw Error("ObjectNotFound", "object index " + std::to_string(object));
  IsotropyPresentation iso;
  iso.base = object;
  iso.in_tree.assign(p.generators.size(), false);
  iso.slot.assign(p.generators.size(), -1);
  iso.tree_path.assign(p.objects.size(), Word{object, {}});

  std::vector<bool> visited(p.objects.size(), false);
  visited[at(object)] = true;
  std::deque<int> queue{object};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    iso.objects.push_back(u);
    for (std::size_t gi = 0; gi < p.generators.size(); ++gi) {
      const auto& g = p.generators[gi];
      for (const int dir : {1, -1}) {
        const int from = dir > 0 ? g.source : g.target;
        const int to = dir > 0 ? g.target : g.source;
        if (from != u || visited[at(to)]) continue;
        visited[at(to)] = true;
        iso.in_tree[gi] = true;
        iso.tree_path[at(to)] = iso.tree_path[at(u)];
        iso.tree_path[at(to)].letters.push_back({static_cast<int>(gi), dir});
        queue.push_back(to);
      }
    }
  }
  for (std::size_t gi = 0; gi < p.generators.size(); ++gi) {
    if (iso.in_tree[gi] || !visited[at(p.generators[gi].source)]) continue;
    iso.slot[gi] = static_cast<int>(iso.presentation.generators.size());
    iso.presentation.generators.push_back(p.generators[gi].label);
  }
  for (const auto& r : p.relators)
    if (visited[at(r.start)]) iso.presentation.relators.push_back(iso.rewrite(r));
  return iso;
}

AbelianGroup abelianized_isotropy(const PresentedGroupoid& p, int object) {
  return abelianization(isotropy_presentation(p, object).presentation);
}

GroupoidOracle::GroupoidOracle(PresentedGroupoid p) : groupoid_(std::move(p)), components_(eqfg::components(groupoid_)) {
  for (const auto& members : components_.members) {
    Component c;
    c.isotropy = isotropy_presentation(groupoid_, members.front());
    c.simplified = simplify(c.isotropy.presentation);
    c.abelian_invariants = abelianization(c.simplified.presentation);
    c.abelian = evidently_abelian(c.simplified.presentation);
    c.relation_lattice = smith_normal_form(IntMatrix(relator_matrix(c.simplified.presentation).transpose()));
    data_.push_back(std::move(c));
  }
}

const GroupoidOracle::Component& GroupoidOracle::component_of(int object) const {
  return data_.at(at(components_.component_of.at(at(object))));
}

GroupWord GroupoidOracle::to_group_word(const Word& loop) const {
  const auto& c = component_of(loop.start);
  return substitute(c.isotropy.rewrite(loop), c.simplified.substitution);
}

IntVector GroupoidOracle::abelianize(const Word& loop) const {
  const auto& c = component_of(loop.start);
  IntVector v = IntVector::Zero(static_cast<Eigen::Index>(c.simplified.presentation.generators.size()));
  for (const auto& l : to_group_word(loop)) v(l.generator) += l.exponent;
  return v;
}

Verdict GroupoidOracle::trivial(const Word& loop) const {
  if (word_end(groupoid_, loop) != loop.start)
    return Verdict::refuted("path " + format_word(groupoid_, loop) + " is not a loop");
  if (free_reduce(groupoid_, loop).empty()) return Verdict::verified(Evidence::Syntactic);
  const auto& c = component_of(loop.start);
  const GroupWord w = to_group_word(loop);
  if (w.empty()) return Verdict::verified(Evidence::Syntactic);
  // A conjugate of a relator or its inverse.
  const GroupWord shape = canonical_cyclic(w);
  for (const auto& r : c.simplified.presentation.relators)
    if (canonical_cyclic(r) == shape) return Verdict::verified(Evidence::Syntactic);
  const IntVector v = abelianize(loop);
  if (!in_column_lattice(c.relation_lattice, v))
    return Verdict::refuted("loop " + format_word(groupoid_, loop) + " is nonzero in the abelianization (" +
                                format_group_word(c.simplified.presentation.generators, to_group_word(loop)) + ")",
                            Evidence::Abelianized);
  if (c.abelian) return Verdict::verified(Evidence::Abelianized);
  return Verdict::undecided("loop " + format_word(groupoid_, loop) +
                            " vanishes in the abelianization of a vertex group not known to be abelian");
}

Verdict GroupoidOracle::equal(const Word& a, const Word& b) const {
  const int ea = word_end(groupoid_, a), eb = word_end(groupoid_, b);
  if (a.start != b.start || ea != eb)
    return Verdict::refuted(format_word(groupoid_, a) + " and " + format_word(groupoid_, b) +
                            " have different endpoints");
  if (free_reduce(groupoid_, a) == free_reduce(groupoid_, b)) return Verdict::verified(Evidence::Syntactic);
  Verdict v = trivial(concat(groupoid_, a, inverse(groupoid_, b)));
  if (v.is_refuted())
    v.detail = format_word(groupoid_, a) + " != " + format_word(groupoid_, b) + " (" + v.detail + ")";
  return v;
}

GroupoidMorphism identity_morphism(const PresentedGroupoid& p) {
  GroupoidMorphism t{p, p, {}, {}};
  for (int i = 0; i < p.object_count(); ++i) t.object_map.push_back(i);
  for (int i = 0; i < p.generator_count(); ++i)
    t.generator_map.push_back({p.generators[at(i)].source, {Letter{i, 1}}});
  return t;
}

void validate_morphism(const GroupoidMorphism& t) {
  if (t.object_map.size() != t.source.objects.size())
    throw Error("MalformedMorphism", "object map has " + std::to_string(t.object_map.size()) + " entries for " +
                                         std::to_string(t.source.objects.size()) + " objects");
  if (t.generator_map.size() != t.source.generators.size())
    throw Error("MalformedMorphism", "generator map has " + std::to_string(t.generator_map.size()) +
                                         " entries for " + std::to_string(t.source.generators.size()) +
                                         " generators");
  for (std::size_t i = 0; i < t.object_map.size(); ++i)
    if (t.object_map[i] < 0 || t.object_map[i] >= t.target.object_count())
      throw Error("MalformedMorphism", "object '" + t.source.objects[i] + "' maps outside the target");
  for (std::size_t i = 0; i < t.generator_map.size(); ++i) {
    const auto& g = t.source.generators[i];
    const auto& w = t.generator_map[i];
    const int from = t.object_map[at(g.source)], to = t.object_map[at(g.target)];
    if (w.start != from || word_end(t.target, w) != to)
      throw Error("NotComposable", "image of generator '" + g.label + "' (" + format_word(t.target, w) +
                                       ") does not run from " + t.target.objects[at(from)] + " to " +
                                       t.target.objects[at(to)]);
  }
}

Word apply(const GroupoidMorphism& t, const Word& w) {
  word_end(t.source, w);
  Word out{t.object_map.at(at(w.start)), {}};
  for (const auto& l : w.letters) {
    const auto& img = t.generator_map.at(at(l.generator)).letters;
    if (l.exponent > 0)
      out.letters.insert(out.letters.end(), img.begin(), img.end());
    else
      for (auto it = img.rbegin(); it != img.rend(); ++it) out.letters.push_back(it->inverse());
  }
  out.letters = free_reduce(std::move(out.letters));
  return out;
}

GroupoidMorphism compose_morphisms(const GroupoidMorphism& t2, const GroupoidMorphism& t1) {
  if (!(t1.target == t2.source))
    throw Error("NotComposable", "target of the first morphism differs from the source of the second");
  GroupoidMorphism out{t1.source, t2.target, {}, {}};
  for (int o : t1.object_map) out.object_map.push_back(t2.object_map.at(at(o)));
  for (const auto& w : t1.generator_map) out.generator_map.push_back(apply(t2, w));
  return out;
}

Verdict check_respects_relations(const GroupoidMorphism& t) {
  validate_morphism(t);
  Verdict result = Verdict::verified();
  std::optional<GroupoidOracle> oracle;
  for (std::size_t i = 0; i < t.source.relators.size(); ++i) {
    const Word image = apply(t, t.source.relators[i]);
    if (image.empty()) continue;
    if (!oracle) oracle.emplace(t.target);
    Verdict v = oracle->trivial(image);
    if (!v.is_verified())
      v.detail = "relator " + format_word(t.source, t.source.relators[i]) + " maps to " +
                 format_word(t.target, image) + ": " + v.detail;
    result = worst(result, v);
    if (result.is_refuted()) return result;
  }
  return result;
}

namespace {

Verdict isotropy_isomorphism(const GroupoidMorphism& t, const GroupoidOracle& src, const GroupoidOracle& tgt,
                             int component) {
  const auto& sc = src.component(component);
  const int base = sc.isotropy.base;
  const auto& tc = tgt.component_of(t.object_map[at(base)]);
  const auto& sp = sc.simplified.presentation;
  const auto& tp = tc.simplified.presentation;
  const std::string where = "isotropy at " + t.source.objects[at(base)];

  if (sc.abelian_invariants != tc.abelian_invariants)
    return Verdict::refuted(where + ": abelianizations differ (" + to_string(sc.abelian_invariants) + " vs " +
                                to_string(tc.abelian_invariants) + ")",
                            Evidence::Abelianized);

  // Images of the surviving source generators as words in the surviving
  // target generators.
  std::vector<GroupWord> images;
  for (std::size_t j = 0; j < sp.generators.size(); ++j) {
    int iso_index = -1;
    for (std::size_t k = 0; k < sc.simplified.substitution.size(); ++k) {
      const auto& s = sc.simplified.substitution[k];
      if (s.size() == 1 && s[0] == Letter{static_cast<int>(j), 1}) {
        iso_index = static_cast<int>(k);
        break;
      }
    }
    const Word loop = sc.isotropy.loop(t.source, iso_index);
    images.push_back(tgt.to_group_word(apply(t, loop)));
  }

  const auto ns = static_cast<Eigen::Index>(sp.generators.size());
  const auto nt = static_cast<Eigen::Index>(tp.generators.size());
  const IntMatrix rt = relator_matrix(tp);
  IntMatrix span(nt, ns + rt.rows());
  span.setZero();
  for (Eigen::Index j = 0; j < ns; ++j)
    for (const auto& l : images[at(j)]) span(l.generator, j) += l.exponent;
  if (rt.rows() > 0) span.rightCols(rt.rows()) = rt.transpose();
  if (nt > 0) {
    const auto snf = smith_normal_form(span);
    bool onto = snf.rank() == nt;
    for (const auto& d : snf.diagonal)
      if (d > 1) onto = false;
    if (!onto)
      return Verdict::refuted(where + ": induced map on abelianized isotropy is not surjective",
                              Evidence::Abelianized);
  }

  bool identical = sp == tp;
  for (Eigen::Index j = 0; j < ns && identical; ++j)
    identical = images[at(j)] == GroupWord{Letter{static_cast<int>(j), 1}};
  if (identical) return Verdict::verified(Evidence::Syntactic);

  if (sc.abelian && tc.abelian) return Verdict::verified(Evidence::Abelianized);

  if (sp.relators.empty() && tp.relators.empty() && ns == nt) {
    std::vector<bool> hit(at(nt), false);
    bool bijective = true;
    for (const auto& img : images) {
      if (img.size() != 1 || hit[at(img[0].generator)]) {
        bijective = false;
        break;
      }
      hit[at(img[0].generator)] = true;
    }
    if (bijective) return Verdict::verified(Evidence::Syntactic);
  }
  return Verdict::undecided(where + ": abelianized map is an isomorphism but the vertex groups are neither "
                                    "known abelian nor matched free generators");
}

}  // namespace

Verdict equivalence_report(const GroupoidMorphism& t) {
  validate_morphism(t);
  const Verdict respects = check_respects_relations(t);
  if (respects.is_refuted()) return respects;

  const GroupoidOracle src(t.source), tgt(t.target);
  const auto& cs = src.components();
  const auto& ct = tgt.components();
  if (cs.count() != ct.count())
    return Verdict::refuted("component counts differ (" + std::to_string(cs.count()) + " vs " +
                            std::to_string(ct.count()) + ")");
  std::vector<int> preimage(at(ct.count()), -1);
  for (int c = 0; c < cs.count(); ++c) {
    const int x = cs.members[at(c)].front();
    const int image = ct.component_of[at(t.object_map[at(x)])];
    if (preimage[at(image)] >= 0)
      return Verdict::refuted("components of " + t.source.objects[at(cs.members[at(preimage[at(image)])].front())] +
                              " and " + t.source.objects[at(x)] + " map to the same component");
    preimage[at(image)] = c;
  }

  Verdict v = respects;
  for (int c = 0; c < cs.count(); ++c) {
    v = worst(v, isotropy_isomorphism(t, src, tgt, c));
    if (v.is_refuted()) return v;
  }
  return v;
}

Verdict strict_isomorphism(const GroupoidMorphism& t) {
  validate_morphism(t);
  if (t.source.objects.size() != t.target.objects.size())
    return Verdict::refuted("object counts differ (" + std::to_string(t.source.objects.size()) + " vs " +
                            std::to_string(t.target.objects.size()) + ")");
  std::vector<int> seen(t.target.objects.size(), -1);
  for (std::size_t i = 0; i < t.object_map.size(); ++i) {
    const int o = t.object_map[i];
    if (seen[at(o)] >= 0)
      return Verdict::refuted("objects " + t.source.objects[at(seen[at(o)])] + " and " + t.source.objects[i] +
                              " both map to " + t.target.objects[at(o)]);
    seen[at(o)] = static_cast<int>(i);
  }
  return equivalence_report(t);
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const PresentedGroupoid& p, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << dot_quote(name) << " {\n";
  for (const auto& o : p.objects) os << "  " << dot_quote(o) << ";\n";
  for (const auto& g : p.generators)
    os << "  " << dot_quote(p.objects[at(g.source)]) << " -> " << dot_quote(p.objects[at(g.target)])
       << " [label=" << dot_quote(g.label) << "];\n";
  for (std::size_t i = 0; i < p.relators.size(); ++i)
    os << "  // relator " << i << ": " << format_word(p, p.relators[i]) << "\n";
  os << "}\n";
  return os.str();
}

}  // namespace eqfg
