#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

#include "hignn/mol.hpp"
#include "mol_internal.hpp"

namespace hignn::mol {

namespace {

struct Pending {
  std::optional<BondOrder> order;
  int direction = 0;
};

bool aromatic_symbol_ok(int z) {
  return z == 5 || z == 6 || z == 7 || z == 8 || z == 15 || z == 16 ||
         z == 33 || z == 34;
}

// [isotope? symbol chirality? Hcount? charge? (:class)?]
Atom parse_bracket(const std::string& body, Chirality* chiral_out) {
  size_t i = 0;
  auto fail = [&](const std::string& w) -> SyntaxError {
    return SyntaxError("bad bracket atom [" + body + "]: " + w);
  };
  while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i])))
    ++i;  // isotope parsed and discarded
  if (i >= body.size()) throw fail("missing element");
  std::string sym;
  bool aromatic = false;
  if (std::islower(static_cast<unsigned char>(body[i]))) {
    aromatic = true;
    sym += static_cast<char>(std::toupper(body[i++]));
    if (i < body.size() && std::islower(static_cast<unsigned char>(body[i])) &&
        (sym == "S" || sym == "A")) {
      // se / as two-letter aromatic symbols
      std::string two = sym + body[i];
      if (two == "Se" || two == "As") {
        sym = two;
        ++i;
      }
    }
  } else if (std::isupper(static_cast<unsigned char>(body[i]))) {
    sym += body[i++];
    if (i < body.size() && std::islower(static_cast<unsigned char>(body[i]))) {
      std::string two = sym + body[i];
      if (atomic_number(two) > 0 && body[i] != 'h') {
        sym = two;
        ++i;
      }
    }
  } else {
    throw fail("bad element");
  }
  int z = atomic_number(sym);
  if (z <= 0) throw fail("unknown element " + sym);
  if (aromatic && !aromatic_symbol_ok(z))
    throw fail("element " + sym + " cannot be aromatic");
  Atom atom;
  atom.z = z;
  atom.aromatic = aromatic;
  atom.bracket = true;
  *chiral_out = Chirality::None;
  if (i < body.size() && body[i] == '@') {
    ++i;
    if (i < body.size() && body[i] == '@') {
      *chiral_out = Chirality::CW;
      ++i;
    } else {
      *chiral_out = Chirality::CCW;
    }
  }
  if (i < body.size() && body[i] == 'H') {
    ++i;
    int h = 0;
    bool digits = false;
    while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) {
      h = h * 10 + (body[i++] - '0');
      digits = true;
    }
    atom.explicit_h = static_cast<int8_t>(digits ? h : 1);
  }
  if (i < body.size() && (body[i] == '+' || body[i] == '-')) {
    char sign = body[i];
    int count = 0;
    while (i < body.size() && body[i] == sign) {
      ++count;
      ++i;
    }
    int mag = 0;
    bool digits = false;
    while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) {
      mag = mag * 10 + (body[i++] - '0');
      digits = true;
    }
    if (digits && count > 1) throw fail("bad charge");
    int q = digits ? mag : count;
    atom.charge = static_cast<int8_t>(sign == '+' ? q : -q);
  }
  if (i < body.size() && body[i] == ':') {
    ++i;  // atom class parsed and discarded
    if (i >= body.size() || !std::isdigit(static_cast<unsigned char>(body[i])))
      throw fail("bad atom class");
    while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i])))
      ++i;
  }
  if (i != body.size()) throw fail("trailing characters");
  return atom;
}

Molecule tokenize_build(const std::string& s) {
  Molecule m;
  m.source = s;
  std::vector<Chirality> chiral_tags;
  int prev = -1;
  std::optional<Pending> pending;
  std::vector<int> paren_stack;
  std::map<int, std::pair<int, std::optional<Pending>>> ring_map;

  auto attach = [&](int cur) {
    if (prev >= 0) {
      std::optional<BondOrder> order;
      int direction = 0;
      if (pending) {
        order = pending->order;
        direction = pending->direction;
      }
      if (!order) {
        order = (m.atoms[prev].aromatic && m.atoms[cur].aromatic)
                    ? BondOrder::Aromatic
                    : BondOrder::Single;
      }
      int bi = m.add_bond(prev, cur, *order);
      m.bonds[bi].direction = static_cast<int8_t>(direction);
      m.chiral_nbrs[prev].push_back(cur);
      m.chiral_nbrs[cur].push_back(prev);
    }
    pending.reset();
    prev = cur;
  };

  size_t i = 0;
  const size_t n = s.size();
  while (i < n) {
    char ch = s[i];
    if (ch == '[') {
      size_t j = s.find(']', i);
      if (j == std::string::npos) throw SyntaxError("unterminated bracket");
      Chirality chi;
      Atom atom = parse_bracket(s.substr(i + 1, j - i - 1), &chi);
      atom.chiral = chi;
      int cur = m.add_atom(atom);
      chiral_tags.push_back(chi);
      attach(cur);
      if (atom.explicit_h > 0) m.chiral_nbrs[cur].push_back(-1);
      i = j + 1;
    } else if (std::isalpha(static_cast<unsigned char>(ch))) {
      Atom atom;
      if (s.compare(i, 2, "Cl") == 0) {
        atom.z = 17;
        i += 2;
      } else if (s.compare(i, 2, "Br") == 0) {
        atom.z = 35;
        i += 2;
      } else if (std::string("BCNOPSFI").find(ch) != std::string::npos) {
        atom.z = atomic_number(std::string(1, ch));
        i += 1;
      } else if (std::string("bcnops").find(ch) != std::string::npos) {
        atom.z = atomic_number(std::string(1, static_cast<char>(std::toupper(ch))));
        atom.aromatic = true;
        i += 1;
      } else {
        throw SyntaxError(std::string("bad token '") + ch + "' at " +
                          std::to_string(i));
      }
      attach(m.add_atom(atom));
    } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '%') {
      if (prev < 0) throw SyntaxError("ring closure before any atom");
      int num;
      if (ch == '%') {
        if (i + 2 >= n || !std::isdigit(static_cast<unsigned char>(s[i + 1])) ||
            !std::isdigit(static_cast<unsigned char>(s[i + 2])))
          throw SyntaxError("bad %nn ring closure");
        num = (s[i + 1] - '0') * 10 + (s[i + 2] - '0');
        i += 3;
      } else {
        num = ch - '0';
        i += 1;
      }
      auto it = ring_map.find(num);
      if (it != ring_map.end()) {
        auto [other, opending] = it->second;
        ring_map.erase(it);
        if (other == prev) throw SyntaxError("ring closure to self");
        std::optional<BondOrder> o1 =
            opending ? opending->order : std::nullopt;
        std::optional<BondOrder> o2 = pending ? pending->order : std::nullopt;
        if (o1 && o2 && *o1 != *o2)
          throw SyntaxError("ring closure bond mismatch");
        std::optional<BondOrder> order = o1 ? o1 : o2;
        if (!order) {
          order = (m.atoms[other].aromatic && m.atoms[prev].aromatic)
                      ? BondOrder::Aromatic
                      : BondOrder::Single;
        }
        int bi = m.add_bond(other, prev, *order);
        int d1 = opending ? opending->direction : 0;
        int d2 = pending ? pending->direction : 0;
        if (d1 && d2 && d1 != -d2)
          throw SyntaxError("ring closure direction mismatch");
        m.bonds[bi].direction = static_cast<int8_t>(d1 ? d1 : -d2);
        for (auto& slot : m.chiral_nbrs[other]) {
          if (slot == -2 - num) {
            slot = prev;
            break;
          }
        }
        m.chiral_nbrs[prev].push_back(other);
        pending.reset();
      } else {
        ring_map[num] = {prev, pending};
        m.chiral_nbrs[prev].push_back(-2 - num);
        pending.reset();
      }
    } else if (ch == '-' || ch == '=' || ch == '#' || ch == ':') {
      if (pending) throw SyntaxError("two bond symbols in a row");
      Pending p;
      p.order = ch == '-'   ? BondOrder::Single
                : ch == '=' ? BondOrder::Double
                : ch == '#' ? BondOrder::Triple
                            : BondOrder::Aromatic;
      pending = p;
      ++i;
    } else if (ch == '/') {
      pending = Pending{BondOrder::Single, +1};
      ++i;
    } else if (ch == '\\') {
      pending = Pending{BondOrder::Single, -1};
      ++i;
    } else if (ch == '(') {
      if (prev < 0) throw SyntaxError("branch before any atom");
      paren_stack.push_back(prev);
      ++i;
    } else if (ch == ')') {
      if (paren_stack.empty()) throw SyntaxError("unmatched ')'");
      prev = paren_stack.back();
      paren_stack.pop_back();
      ++i;
    } else if (ch == '.') {
      if (pending || !paren_stack.empty()) throw SyntaxError("misplaced '.'");
      prev = -1;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(ch))) {
      break;
    } else {
      throw SyntaxError(std::string("bad character '") + ch + "' at " +
                        std::to_string(i));
    }
  }
  if (!paren_stack.empty()) throw SyntaxError("unmatched '('");
  if (!ring_map.empty()) {
    std::string digits;
    for (const auto& [d, _] : ring_map) digits += std::to_string(d) + " ";
    throw UnclosedRing("dangling ring closure " + digits);
  }
  if (m.atoms.empty()) throw SyntaxError("empty SMILES");
  return m;
}

Molecule largest_component(Molecule&& m) {
  int n = m.n_atoms();
  std::vector<int> comp(n, -1);
  int c = 0;
  for (int start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    std::vector<int> stack{start};
    comp[start] = c;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : m.neighbors(u))
        if (comp[v] < 0) {
          comp[v] = c;
          stack.push_back(v);
        }
    }
    ++c;
  }
  if (c == 1) return std::move(m);
  std::vector<int> sizes(c, 0), first(c, n);
  for (int i = 0; i < n; ++i) {
    ++sizes[comp[i]];
    first[comp[i]] = std::min(first[comp[i]], i);
  }
  int keep = 0;
  for (int k = 1; k < c; ++k)
    if (sizes[k] > sizes[keep] ||
        (sizes[k] == sizes[keep] && first[k] < first[keep]))
      keep = k;

  Molecule sub;
  sub.source = m.source;
  sub.warnings = m.warnings;
  sub.warnings.push_back("kept largest of " + std::to_string(c) +
                         " components (" + std::to_string(sizes[keep]) +
                         " atoms)");
  std::vector<int> remap(n, -1);
  for (int i = 0; i < n; ++i)
    if (comp[i] == keep) remap[i] = sub.add_atom(m.atoms[i]);
  for (const auto& b : m.bonds) {
    if (remap[b.a] < 0 || remap[b.b] < 0) continue;
    int bi = sub.add_bond(remap[b.a], remap[b.b], b.order);
    sub.bonds[bi].kek_order = b.kek_order;
    sub.bonds[bi].direction = b.direction;
  }
  for (int i = 0; i < n; ++i) {
    if (remap[i] < 0) continue;
    for (int x : m.chiral_nbrs[i])
      sub.chiral_nbrs[remap[i]].push_back(x >= 0 ? remap[x] : x);
  }
  return sub;
}

}  // namespace

Molecule parse_smiles(const std::string& smiles) {
  size_t start = smiles.find_first_not_of(" \t\r\n");
  if (start == std::string::npos) throw SyntaxError("empty SMILES");
  Molecule m = tokenize_build(smiles.substr(start));
  m = largest_component(std::move(m));
  detail::perceive_rings(m);
  detail::validate_aromatic(m);
  detail::promote_kekule_rings(m);
  detail::demote_nonring_aromatic_bonds(m);
  detail::kekulize(m);
  detail::electron_check(m);
  detail::assign_hydrogens(m);
  detail::perceive_ez(m);
  detail::perceive_conjugation(m);
  for (int i = 0; i < m.n_atoms(); ++i) {
    Atom& a = m.atoms[i];
    if (a.chiral != Chirality::None &&
        m.degree(i) + (a.explicit_h > 0 ? 1 : 0) < 3)
      a.chiral = Chirality::None;
  }
  return m;
}

}  // namespace hignn::mol
