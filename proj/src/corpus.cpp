#include "cdp/corpus.hpp"

#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace cdp {

std::string tag_names(unsigned tags) {
  std::string out;
  auto add = [&](FormulaTag t, const char* name) {
    if ((tags & static_cast<unsigned>(t)) == 0) return;
    if (!out.empty()) out += ',';
    out += name;
  };
  add(FormulaTag::shortest_axiom, "shortest_axiom");
  add(FormulaTag::too_weak, "too_weak");
  add(FormulaTag::basis_member, "basis_member");
  add(FormulaTag::seven_symbol_target, "seven_symbol_target");
  if (out.empty()) out = "-";
  return out;
}

namespace corpus {

namespace {

unsigned bit(FormulaTag t) { return static_cast<unsigned>(t); }

struct Store {
  std::vector<NamedFormula> entries;
  std::unordered_map<std::string, std::size_t> by_name;
  std::size_t axioms_begin = 0, axioms_end = 0;
  std::size_t basis_begin = 0;
  std::size_t targets_begin = 0;

  void add(const std::string& name, const char* text, unsigned tags) {
    NamedFormula nf{name, canonical_rename(parse_formula(text)), tags};
    by_name.emplace(name, entries.size());
    entries.push_back(std::move(nf));
  }

  Store() {
    // the three Lukasiewicz axioms, Meredith's seven, Kalman's eleventh
    axioms_begin = entries.size();
    add("L1", "e(e(x,y),e(e(z,y),e(x,z)))", bit(FormulaTag::shortest_axiom));
    add("L2", "e(e(x,y),e(e(x,z),e(z,y)))", bit(FormulaTag::shortest_axiom));
    add("L3", "e(e(x,y),e(e(z,x),e(y,z)))", bit(FormulaTag::shortest_axiom));
    add("M1", "e(e(e(x,y),z),e(y,e(z,x)))", bit(FormulaTag::shortest_axiom));
    add("M2", "e(x,e(e(y,e(x,z)),e(z,y)))", bit(FormulaTag::shortest_axiom));
    add("M3", "e(e(x,e(y,z)),e(z,e(x,y)))", bit(FormulaTag::shortest_axiom));
    add("M4", "e(e(x,y),e(z,e(e(y,z),x)))", bit(FormulaTag::shortest_axiom));
    add("M5", "e(e(x,y),e(z,e(e(z,y),x)))", bit(FormulaTag::shortest_axiom));
    add("M6", "e(e(e(x,e(y,z)),z),e(y,x))", bit(FormulaTag::shortest_axiom));
    add("M7", "e(e(e(x,e(y,z)),y),e(z,x))", bit(FormulaTag::shortest_axiom));
    add("K1", "e(x,e(e(y,e(z,x)),e(z,y)))", bit(FormulaTag::shortest_axiom));
    add("XHN", "e(x,e(e(y,z),e(e(z,x),y)))", bit(FormulaTag::shortest_axiom));
    add("XHK", "e(x,e(e(y,z),e(e(x,z),y)))", bit(FormulaTag::shortest_axiom));
    add("XCB", "e(x,e(e(e(x,y),e(z,y)),z))", bit(FormulaTag::shortest_axiom));
    axioms_end = entries.size();

    add("XJL", "e(x,e(y,e(e(e(z,y),x),z)))", bit(FormulaTag::too_weak));
    add("XKE", "e(x,e(y,e(e(x,e(z,y)),z)))", bit(FormulaTag::too_weak));
    add("XAK", "e(x,e(e(e(e(y,z),x),z),y))", bit(FormulaTag::too_weak));
    add("BXO", "e(e(e(e(x,e(y,z)),z),y),x)", bit(FormulaTag::too_weak));

    basis_begin = entries.size();
    add("reflexivity", "e(x,x)", bit(FormulaTag::basis_member));
    add("transitivity", "e(e(x,y),e(e(y,z),e(x,z)))",
        bit(FormulaTag::basis_member));
    add("symmetry", "e(e(x,y),e(y,x))", bit(FormulaTag::basis_member));

    targets_begin = entries.size();
    std::size_t k = 1;
    for (const Formula& f : enumerate_two_property_theorems(7)) {
      add("S" + std::to_string(k++), format_formula(f).c_str(),
          bit(FormulaTag::seven_symbol_target));
    }
  }
};

const Store& store() {
  static Store s;
  return s;
}

}  // namespace

const NamedFormula& get(const std::string& name) {
  const Store& s = store();
  auto it = s.by_name.find(name);
  if (it == s.by_name.end())
    throw std::out_of_range("unknown corpus name '" + name + "'");
  return s.entries[it->second];
}

const NamedFormula* find_variant(const Formula& f) {
  for (const NamedFormula& nf : store().entries)
    if (is_variant(nf.formula, f)) return &nf;
  return nullptr;
}

std::span<const NamedFormula> all() { return store().entries; }

std::span<const NamedFormula> shortest_axioms() {
  const Store& s = store();
  return {s.entries.data() + s.axioms_begin, s.axioms_end - s.axioms_begin};
}

std::span<const NamedFormula> two_basis() {
  const Store& s = store();
  return {s.entries.data() + s.basis_begin + 1, 2};
}

std::span<const NamedFormula> three_basis() {
  const Store& s = store();
  return {s.entries.data() + s.basis_begin, 3};
}

std::span<const NamedFormula> seven_symbol_targets() {
  const Store& s = store();
  return {s.entries.data() + s.targets_begin,
          s.entries.size() - s.targets_begin};
}

}  // namespace corpus

}  // namespace cdp
