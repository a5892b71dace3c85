#include "sofic/wordball.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace sofic {

void GeneratingSystem::check_letters(const Word &w) const {
  for (Letter l : w) {
    if (!is_letter(l)) throw UnknownGenerator("unknown generator symbol " + std::to_string(l) + " for " + descriptor());
  }
}

std::string GeneratingSystem::format(const Word &w) const {
  if (w.empty()) return "e";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    const Letter l = w[i];
    const std::size_t run = j - i;
    if (l < 0 && letter_name(l) == letter_name(-l) + "^-1") {
      os << letter_name(-l) << "^-" << run;
    } else {
      os << letter_name(l);
      if (run > 1) os << "^" << run;
    }
    i = j;
  }
  return os.str();
}

Word GeneratingSystem::parse_word(std::string_view text) const {
  std::vector<std::pair<std::string, Letter>> names;
  for (Letter g : generators()) {
    names.emplace_back(letter_name(g), g);
  }
  std::sort(names.begin(), names.end(), [](const auto &a, const auto &b) { return a.first.size() > b.first.size(); });
  Word out;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  if (text.substr(pos) == "e") return out;
  while (skip(), pos < text.size()) {
    Letter found = 0;
    for (const auto &[name, l] : names) {
      if (text.substr(pos, name.size()) == name) {
        found = l;
        pos += name.size();
        break;
      }
    }
    if (found == 0) throw UnknownGenerator("unknown generator symbol at '" + std::string(text.substr(pos)) + "'");
    long exp = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      bool neg = false;
      if (pos < text.size() && text[pos] == '-') {
        neg = true;
        ++pos;
      }
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (start == pos) throw std::invalid_argument("missing exponent in word '" + std::string(text) + "'");
      exp = std::stol(std::string(text.substr(start, pos - start)));
      if (neg) exp = -exp;
    }
    Letter l = exp < 0 ? inverse(found) : found;
    for (long k = 0; k < std::labs(exp); ++k) out.push_back(l);
  }
  return out;
}

namespace {

class FreeProductSystem final : public GeneratingSystem {
 public:
  explicit FreeProductSystem(std::vector<std::size_t> orders) : orders_(std::move(orders)) {
    if (orders_.empty()) throw std::invalid_argument("free product needs at least one factor");
    if (orders_.size() > 26) throw std::invalid_argument("too many factors");
  }

  std::string descriptor() const override {
    auto factor = [](std::size_t m) { return m == 0 ? std::string("z") : "zmod(" + std::to_string(m) + ")"; };
    if (orders_.size() == 1) return factor(orders_[0]);
    std::string s = "freeprod(";
    for (std::size_t i = 0; i < orders_.size(); ++i) s += (i ? "," : "") + factor(orders_[i]);
    return s + ")";
  }

  std::vector<Letter> generators() const override {
    std::vector<Letter> g;
    for (std::size_t i = 0; i < orders_.size(); ++i) g.push_back(static_cast<Letter>(i + 1));
    return g;
  }

  bool is_letter(Letter l) const override {
    return l != 0 && static_cast<std::size_t>(std::abs(l)) <= orders_.size();
  }

  Letter inverse(Letter l) const override {
    if (!is_letter(l)) throw UnknownGenerator("unknown generator symbol " + std::to_string(l));
    return -l;
  }

  Word reduce(const Word &w) const override {
    check_letters(w);
    std::vector<std::pair<Letter, long>> stack;  // (generator, exponent)
    for (Letter l : w) {
      const Letter g = std::abs(l);
      const long step = l > 0 ? 1 : -1;
      if (!stack.empty() && stack.back().first == g) {
        stack.back().second += step;
      } else {
        stack.emplace_back(g, step);
      }
      normalise(stack.back());
      if (stack.back().second == 0) stack.pop_back();
    }
    Word out;
    for (const auto &[g, e] : stack) {
      const Letter l = e > 0 ? g : -g;
      for (long k = 0; k < std::labs(e); ++k) out.push_back(l);
    }
    return out;
  }

  std::string letter_name(Letter l) const override {
    std::string base(1, static_cast<char>('a' + std::abs(l) - 1));
    return l > 0 ? base : base + "^-1";
  }

 private:
  void normalise(std::pair<Letter, long> &syl) const {
    const std::size_t m = orders_[static_cast<std::size_t>(syl.first - 1)];
    if (m == 0) return;
    long e = syl.second % static_cast<long>(m);
    if (e < 0) e += static_cast<long>(m);
    syl.second = e;
  }

  std::vector<std::size_t> orders_;
};

class TableSystem final : public GeneratingSystem {
 public:
  TableSystem(std::vector<std::vector<std::size_t>> table, std::vector<Letter> gens, std::string desc)
      : table_(std::move(table)), gens_(std::move(gens)), desc_(std::move(desc)) {
    const std::size_t n = table_.size();
    if (n == 0) throw std::invalid_argument("empty Cayley table");
    inv_.assign(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (table_[i].size() != n) throw std::invalid_argument("Cayley table is not square");
      if (table_[0][i] != i || table_[i][0] != i) throw std::invalid_argument("element 0 is not the identity");
      std::vector<char> seen(n, 0);
      for (std::size_t j = 0; j < n; ++j) {
        if (table_[i][j] >= n || seen[table_[i][j]]) throw std::invalid_argument("Cayley table row is not a permutation");
        seen[table_[i][j]] = 1;
        if (table_[i][j] == 0) inv_[i] = j;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          if (table_[table_[i][j]][k] != table_[i][table_[j][k]]) throw std::invalid_argument("Cayley table is not associative");
        }
      }
    }
    if (gens_.empty()) {
      for (std::size_t i = 1; i < n; ++i) gens_.push_back(static_cast<Letter>(i));
    }
    for (Letter g : gens_) {
      if (!is_letter(g)) throw std::invalid_argument("generator " + std::to_string(g) + " is not a non-identity element");
    }
  }

  std::string descriptor() const override { return desc_; }
  std::vector<Letter> generators() const override { return gens_; }
  bool is_letter(Letter l) const override { return l >= 1 && static_cast<std::size_t>(l) < table_.size(); }
  Letter inverse(Letter l) const override {
    if (!is_letter(l)) throw UnknownGenerator("unknown generator symbol " + std::to_string(l));
    return static_cast<Letter>(inv_[static_cast<std::size_t>(l)]);
  }
  Word reduce(const Word &w) const override {
    check_letters(w);
    std::size_t g = 0;
    for (Letter l : w) g = table_[g][static_cast<std::size_t>(l)];
    return g == 0 ? Word{} : Word{static_cast<Letter>(g)};
  }
  std::string letter_name(Letter l) const override { return "g" + std::to_string(l); }

 private:
  std::vector<std::vector<std::size_t>> table_;
  std::vector<Letter> gens_;
  std::string desc_;
  std::vector<std::size_t> inv_;
};

class CustomSystem final : public GeneratingSystem {
 public:
  CustomSystem(std::string desc, std::vector<Letter> gens, std::function<Letter(Letter)> inv,
               std::function<Word(const Word &)> red)
      : desc_(std::move(desc)), gens_(std::move(gens)), inv_(std::move(inv)), red_(std::move(red)) {}
  std::string descriptor() const override { return desc_; }
  std::vector<Letter> generators() const override { return gens_; }
  bool is_letter(Letter l) const override {
    for (Letter g : gens_) {
      if (l == g || l == inv_(g)) return true;
    }
    return false;
  }
  Letter inverse(Letter l) const override { return inv_(l); }
  Word reduce(const Word &w) const override {
    check_letters(w);
    return red_(w);
  }
  std::string letter_name(Letter l) const override { return "x" + std::to_string(l); }

 private:
  std::string desc_;
  std::vector<Letter> gens_;
  std::function<Letter(Letter)> inv_;
  std::function<Word(const Word &)> red_;
};

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::size_t parse_factor(const std::string &f) {
  if (f == "z") return 0;
  if (f.rfind("zmod(", 0) == 0 && f.back() == ')') {
    std::string num = trim(f.substr(5, f.size() - 6));
    if (num.empty() || !std::all_of(num.begin(), num.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw std::invalid_argument("bad cyclic order in '" + f + "'");
    }
    std::size_t m = std::stoul(num);
    if (m == 0) throw std::invalid_argument("zmod(0) is not allowed; use z");
    return m;
  }
  throw std::invalid_argument("unknown group factor '" + f + "'");
}

} // namespace

SystemPtr free_product_system(std::vector<std::size_t> orders) {
  return std::make_shared<FreeProductSystem>(std::move(orders));
}

SystemPtr table_system(std::vector<std::vector<std::size_t>> table, std::vector<Letter> generators, std::string descriptor) {
  return std::make_shared<TableSystem>(std::move(table), std::move(generators), std::move(descriptor));
}

SystemPtr custom_system(std::string descriptor, std::vector<Letter> generators, std::function<Letter(Letter)> inverse,
                        std::function<Word(const Word &)> reduce) {
  return std::make_shared<CustomSystem>(std::move(descriptor), std::move(generators), std::move(inverse), std::move(reduce));
}

SystemPtr load_table_system(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open Cayley table '" + path + "'");
  std::size_t order = 0;
  std::vector<Letter> gens;
  std::vector<std::vector<std::size_t>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "order") {
      ls >> order;
    } else if (key == "generators") {
      for (Letter g; ls >> g;) gens.push_back(g);
    } else if (key == "row") {
      std::vector<std::size_t> row;
      for (std::size_t v; ls >> v;) row.push_back(v);
      rows.push_back(std::move(row));
    } else {
      throw std::invalid_argument("Cayley table '" + path + "': unknown record '" + key + "'");
    }
  }
  if (rows.size() != order) throw std::invalid_argument("Cayley table '" + path + "': expected " + std::to_string(order) + " rows");
  return table_system(std::move(rows), std::move(gens), "table(" + path + ")");
}

SystemPtr parse_system(std::string_view descriptor) {
  std::string d;
  for (char c : descriptor) {
    if (!std::isspace(static_cast<unsigned char>(c))) d.push_back(c);
  }
  if (d.rfind("table(", 0) == 0 && d.back() == ')') return load_table_system(trim(descriptor).substr(6, trim(descriptor).size() - 7));
  if (d.rfind("freeprod(", 0) == 0 && d.back() == ')') {
    std::string inner = d.substr(9, d.size() - 10);
    std::vector<std::size_t> orders;
    int depth = 0;
    std::string cur;
    for (char c : inner) {
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c == ',' && depth == 0) {
        orders.push_back(parse_factor(cur));
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    orders.push_back(parse_factor(cur));
    if (orders.size() < 2) throw std::invalid_argument("freeprod needs at least two factors");
    return free_product_system(std::move(orders));
  }
  return free_product_system({parse_factor(d)});
}

Word reduce_product(const GeneratingSystem &sys, const Word &u, const Word &v) {
  Word w(u);
  w.insert(w.end(), v.begin(), v.end());
  return sys.reduce(w);
}

std::optional<std::size_t> Ball::index_of(const Word &canonical) const {
  auto it = lookup.find(canonical);
  if (it == lookup.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Ball::product(std::size_t i, std::size_t j) const {
  return index_of(reduce_product(*system, elements.at(i), elements.at(j)));
}

Ball ball(const SystemPtr &sys, const std::vector<Letter> &F, std::size_t n, std::size_t cap) {
  Ball b;
  b.system = sys;
  b.generating_set = F;
  b.radius = n;
  std::vector<Letter> step;
  for (Letter l : F) {
    if (!sys->is_letter(l)) throw UnknownGenerator("unknown generator symbol " + std::to_string(l));
    step.push_back(l);
    step.push_back(sys->inverse(l));
  }
  auto add = [&](Word canonical, Word witness, std::size_t len) {
    if (b.lookup.count(canonical)) return false;
    if (b.elements.size() >= cap) throw CapError("ball exceeds cap " + std::to_string(cap));
    b.lookup.emplace(canonical, b.elements.size());
    b.elements.push_back(std::move(canonical));
    b.witnesses.push_back(std::move(witness));
    b.word_length.push_back(len);
    return true;
  };
  add(Word{}, Word{}, 0);
  std::size_t layer_begin = 0;
  for (std::size_t len = 1; len <= n; ++len) {
    const std::size_t layer_end = b.elements.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (Letter l : step) {
        Word w = b.witnesses[i];
        w.push_back(l);
        add(sys->reduce(w), w, len);
      }
    }
    if (b.elements.size() == layer_end) break;
    layer_begin = layer_end;
  }
  return b;
}

} // namespace sofic
