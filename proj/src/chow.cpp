#include "chowring/chow.hpp"

#include <algorithm>
#include <bit>

namespace chowring {

// ---------------------------------------------------------------------------
// Ambient

Ambient::Ambient(std::shared_ptr<const OrderedGraph> g, int d) : graph_(std::move(g)), d_(d) {
  check_dimension(d);
  if (!graph_) {
    radix_ = 2;
    vertex_count_ = std::uint64_t{1} << d;
    return;
  }
  radix_ = graph_->vertex_count();
  vertex_count_ = 1;
  for (int i = 0; i < d; ++i) {
    if (radix_ != 0 && vertex_count_ > (std::uint64_t{1} << 62) / radix_)
      throw LimitError("product of " + std::to_string(radix_) + " vertices to the power " +
                       std::to_string(d) + " is too large to index");
    vertex_count_ *= radix_;
  }
}

Ambient Ambient::cube(int d) { return Ambient(nullptr, d); }

Ambient Ambient::product(std::shared_ptr<const OrderedGraph> g, int d) {
  if (!g) throw AmbientError("product ambient needs a graph");
  return Ambient(std::move(g), d);
}

VertexId Ambient::encode(const ProductVertex& p) const {
  if (is_cube()) {
    if (p.coords.size() != static_cast<std::size_t>(d_))
      throw DimensionError("cube vertex needs " + std::to_string(d_) + " coordinates");
    VertexId v = 0;
    for (std::size_t i = 0; i < p.coords.size(); ++i) {
      if (p.coords[i] > 1) throw DimensionError("cube coordinates are 0 or 1");
      v |= VertexId{p.coords[i]} << i;
    }
    return v;
  }
  check_product_vertex(*graph_, d_, p);
  VertexId v = 0;
  for (auto c : p.coords) v = v * radix_ + c;
  return v;
}

std::uint32_t Ambient::coordinate(VertexId v, int i) const {
  if (is_cube()) return static_cast<std::uint32_t>(v >> i & 1u);
  for (int k = d_ - 1; k > i; --k) v /= radix_;
  return static_cast<std::uint32_t>(v % radix_);
}

ProductVertex Ambient::decode(VertexId v) const {
  ProductVertex p;
  p.coords.resize(static_cast<std::size_t>(d_));
  if (is_cube()) {
    for (int i = 0; i < d_; ++i) p.coords[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(v >> i & 1u);
    return p;
  }
  for (int i = d_ - 1; i >= 0; --i) {
    p.coords[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(v % radix_);
    v /= radix_;
  }
  return p;
}

bool Ambient::is_simplex(std::span<const VertexId> vs) const {
  if (vs.size() <= 1) return true;
  if (is_cube()) {
    for (std::size_t a = 0; a < vs.size(); ++a)
      for (std::size_t b = a + 1; b < vs.size(); ++b) {
        const auto x = vs[a], y = vs[b];
        if ((x & ~y) != 0 && (y & ~x) != 0) return false;
      }
    return true;
  }
  std::vector<ProductVertex> ps;
  ps.reserve(vs.size());
  for (auto v : vs) ps.push_back(decode(v));
  return chowring::is_simplex(*graph_, d_, ps);
}

std::string Ambient::describe() const {
  if (is_cube()) return "I^" + std::to_string(d_);
  return "Gamma^" + std::to_string(d_) + " (" + std::to_string(graph_->vertex_count()) + " vertices)";
}

bool operator==(const Ambient& a, const Ambient& b) {
  if (a.d_ != b.d_ || a.is_cube() != b.is_cube()) return false;
  return a.is_cube() || a.graph_ == b.graph_ || *a.graph_ == *b.graph_;
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::from_vertices(std::span<const VertexId> vs) {
  Monomial m;
  for (auto v : vs) m.multiply_vertex(v);
  return m;
}

std::vector<VertexId> Monomial::support() const {
  std::vector<VertexId> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.vertex);
  return out;
}

void Monomial::multiply_vertex(VertexId v, std::uint32_t times) {
  if (times == 0) return;
  auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                             [](const Factor& f, VertexId x) { return f.vertex < x; });
  if (it != factors_.end() && it->vertex == v)
    it->multiplicity += times;
  else
    factors_.insert(it, Factor{v, times});
  degree_ += times;
}

void Monomial::divide_vertex(VertexId v) {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                             [](const Factor& f, VertexId x) { return f.vertex < x; });
  if (it == factors_.end() || it->vertex != v) throw std::logic_error("divide_vertex: absent factor");
  if (--it->multiplicity == 0) factors_.erase(it);
  --degree_;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.factors_.reserve(a.factors_.size() + b.factors_.size());
  auto i = a.factors_.begin(), j = b.factors_.begin();
  while (i != a.factors_.end() || j != b.factors_.end()) {
    if (j == b.factors_.end() || (i != a.factors_.end() && i->vertex < j->vertex)) {
      out.factors_.push_back(*i++);
    } else if (i == a.factors_.end() || j->vertex < i->vertex) {
      out.factors_.push_back(*j++);
    } else {
      out.factors_.push_back(Factor{i->vertex, i->multiplicity + j->multiplicity});
      ++i;
      ++j;
    }
  }
  out.degree_ = a.degree_ + b.degree_;
  return out;
}

bool operator<(const Monomial& a, const Monomial& b) {
  return std::lexicographical_compare(
      a.factors_.begin(), a.factors_.end(), b.factors_.begin(), b.factors_.end(),
      [](const Factor& x, const Factor& y) {
        return x.vertex != y.vertex ? x.vertex < y.vertex : x.multiplicity < y.multiplicity;
      });
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ m.degree();
  for (const auto& f : m.factors()) {
    h ^= f.vertex + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= f.multiplicity + 0x7f4a7c159e3779b9ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// Cycle

Cycle::Cycle(Ambient ambient, int degree) : ambient_(std::move(ambient)), degree_(degree) {
  if (degree < 0) throw DegreeError("negative degree");
}

Cycle Cycle::vertex(const Ambient& ambient, VertexId v) {
  if (v >= ambient.vertex_count()) throw DimensionError("vertex outside " + ambient.describe());
  Cycle c(ambient, 1);
  c.add_term(Monomial::from_vertices(std::span(&v, 1)), 1);
  return c;
}

Cycle Cycle::monomial(const Ambient& ambient, const Monomial& m, const Rational& coef) {
  for (const auto& f : m.factors())
    if (f.vertex >= ambient.vertex_count()) throw DimensionError("vertex outside " + ambient.describe());
  Cycle c(ambient, static_cast<int>(m.degree()));
  c.add_term(m, coef);
  return c;
}

Cycle Cycle::one(const Ambient& ambient) {
  Cycle c(ambient, 0);
  c.add_term(Monomial{}, 1);
  return c;
}

Rational Cycle::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<std::pair<Monomial, Rational>> Cycle::sorted_terms() const {
  std::vector<std::pair<Monomial, Rational>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

void Cycle::add_term(const Monomial& m, const Rational& coef) {
  if (static_cast<int>(m.degree()) != degree_)
    throw DegreeError("monomial of degree " + std::to_string(m.degree()) + " added to a cycle of degree " +
                      std::to_string(degree_));
  if (coef == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0) terms_.erase(it);
  }
}

void Cycle::check_compatible(const Cycle& other) const {
  if (!(ambient_ == other.ambient_))
    throw AmbientError("cycles live on different ambients: " + ambient_.describe() + " vs " +
                       other.ambient_.describe());
}

Cycle& Cycle::operator+=(const Cycle& other) {
  check_compatible(other);
  if (other.degree_ != degree_) {
    if (other.is_zero()) return *this;
    if (!is_zero())
      throw DegreeError("cannot add cycles of degree " + std::to_string(degree_) + " and " +
                        std::to_string(other.degree_));
    degree_ = other.degree_;
  }
  for (const auto& [m, q] : other.terms_) add_term(m, q);
  return *this;
}

Cycle& Cycle::operator-=(const Cycle& other) { return *this += -other; }

Cycle& Cycle::operator*=(const Rational& q) {
  if (q == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= q;
  return *this;
}

bool operator==(const Cycle& a, const Cycle& b) {
  if (!(a.ambient_ == b.ambient_)) return false;
  if (a.is_zero() && b.is_zero()) return true;
  return a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

Cycle operator+(Cycle a, const Cycle& b) { return a += b; }
Cycle operator-(Cycle a, const Cycle& b) { return a -= b; }
Cycle operator-(Cycle a) { return a *= Rational(-1); }
Cycle operator*(const Rational& q, Cycle a) { return a *= q; }
Cycle operator*(const Cycle& a, const Cycle& b) { return multiply(a, b, Pruning::eager); }

Cycle multiply(const Cycle& a, const Cycle& b, Pruning pruning) {
  if (!(a.ambient() == b.ambient()))
    throw AmbientError("cannot multiply cycles on " + a.ambient().describe() + " and " +
                       b.ambient().describe());
  Cycle out(a.ambient(), a.degree() + b.degree());
  std::vector<VertexId> support;
  for (const auto& [ma, qa] : a.terms()) {
    for (const auto& [mb, qb] : b.terms()) {
      Monomial m = ma * mb;
      if (pruning == Pruning::eager && m.size() > 1) {
        support.clear();
        for (const auto& f : m.factors()) support.push_back(f.vertex);
        if (!a.ambient().is_simplex(support)) continue;
      }
      out.add_term(m, qa * qb);
    }
  }
  return out;
}

Cycle power(const Cycle& a, int k) {
  if (k < 0) throw DegreeError("negative exponent");
  Cycle out = Cycle::one(a.ambient());
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}

// ---------------------------------------------------------------------------
// Relations

namespace {

// Binomial coefficient, saturating at limit + 1.
std::size_t multiset_count(std::uint64_t n, int k, std::size_t limit) {
  // C(n + k - 1, k)
  unsigned __int128 c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * (n + static_cast<std::uint64_t>(i) - 1) / static_cast<std::uint64_t>(i);
    if (c > limit) return limit + 1;
  }
  return static_cast<std::size_t>(c);
}

Cycle total_sum(const Ambient& ambient) {
  Cycle s(ambient, 1);
  for (VertexId v = 0; v < ambient.vertex_count(); ++v) s.add_term(Monomial::from_vertices(std::span(&v, 1)), 1);
  return s;
}

}  // namespace

std::vector<Monomial> monomial_basis(const Ambient& ambient, int degree, std::size_t max_count) {
  if (degree < 0) throw DegreeError("negative degree");
  const std::uint64_t n = ambient.vertex_count();
  const std::size_t count = multiset_count(n, degree, max_count);
  if (count > max_count)
    throw LimitError("monomial basis of degree " + std::to_string(degree) + " on " + ambient.describe() +
                     " exceeds " + std::to_string(max_count) + " elements");
  std::vector<Monomial> out;
  out.reserve(count);
  if (degree == 0) {
    out.emplace_back();
    return out;
  }
  if (n == 0) return out;
  std::vector<VertexId> seq(static_cast<std::size_t>(degree), 0);
  while (true) {
    out.push_back(Monomial::from_vertices(seq));
    int pos = degree - 1;
    while (pos >= 0 && seq[static_cast<std::size_t>(pos)] == n - 1) --pos;
    if (pos < 0) break;
    const VertexId next = seq[static_cast<std::size_t>(pos)] + 1;
    for (auto k = static_cast<std::size_t>(pos); k < seq.size(); ++k) seq[k] = next;
  }
  return out;
}

std::vector<Cycle> relation_generators(const Ambient& ambient, int k, std::size_t max_basis) {
  if (k < 1) throw DegreeError("relations live in positive degree");
  std::vector<Cycle> out;

  for (const auto& m : monomial_basis(ambient, k, max_basis)) {
    const auto support = m.support();
    if (!ambient.is_simplex(support)) out.push_back(Cycle::monomial(ambient, m));
  }

  if (k >= 2) {
    const Cycle sum = total_sum(ambient);
    for (const auto& m : monomial_basis(ambient, k - 1, max_basis))
      out.push_back(multiply(sum, Cycle::monomial(ambient, m), Pruning::none));
  }

  if (k >= 3) {
    const auto fillers = monomial_basis(ambient, k - 3, max_basis);
    const int d = ambient.dimension();
    for (VertexId c2 = 0; c2 < ambient.vertex_count(); ++c2) {
      for (int i = 0; i < d; ++i) {
        Cycle fibre(ambient, 1);
        for (VertexId c = 0; c < ambient.vertex_count(); ++c)
          if (ambient.coordinate(c, i) == ambient.coordinate(c2, i))
            fibre.add_term(Monomial::from_vertices(std::span(&c, 1)), 1);
        for (VertexId c1 = 0; c1 < ambient.vertex_count(); ++c1) {
          if (ambient.coordinate(c1, i) == ambient.coordinate(c2, i)) continue;
          const VertexId pair[] = {c1, c2};
          const Cycle base = multiply(Cycle::monomial(ambient, Monomial::from_vertices(pair)), fibre, Pruning::none);
          for (const auto& m : fillers)
            out.push_back(multiply(base, Cycle::monomial(ambient, m), Pruning::none));
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pullback

GraphMorphism::GraphMorphism(std::shared_ptr<const OrderedGraph> source,
                             std::shared_ptr<const OrderedGraph> target,
                             std::vector<std::uint32_t> vertex_map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(vertex_map)) {
  if (!source_ || !target_) throw GraphError("graph morphism needs source and target");
  if (map_.size() != source_->vertex_count())
    throw GraphError("vertex map has " + std::to_string(map_.size()) + " entries, source has " +
                     std::to_string(source_->vertex_count()) + " vertices");
  for (auto t : map_)
    if (t >= target_->vertex_count()) throw GraphError("vertex map leaves the target graph");
  for (std::size_t v = 1; v < map_.size(); ++v)
    if (map_[v - 1] > map_[v]) throw GraphError("vertex map is not order-preserving");
  for (const auto& e : source_->edges()) {
    const auto a = map_[e.low], b = map_[e.high];
    if (a != b && !target_->has_edge(a, b))
      throw GraphError("edge (" + std::to_string(e.low) + ", " + std::to_string(e.high) +
                       ") is sent to a non-edge");
  }
}

GraphMorphism GraphMorphism::identity(std::shared_ptr<const OrderedGraph> g) {
  std::vector<std::uint32_t> map(g->vertex_count());
  for (std::uint32_t v = 0; v < map.size(); ++v) map[v] = v;
  return GraphMorphism(g, g, std::move(map));
}

GraphMorphism GraphMorphism::after(const GraphMorphism& first) const {
  if (!(*first.target_ == *source_)) throw GraphError("morphisms do not compose");
  std::vector<std::uint32_t> map(first.map_.size());
  for (std::size_t v = 0; v < map.size(); ++v) map[v] = map_[first.map_[v]];
  return GraphMorphism(first.source_, target_, std::move(map));
}

Cycle pullback(std::span<const GraphMorphism> fs, const Cycle& a) {
  const Ambient& target = a.ambient();
  const int d = target.dimension();
  if (target.is_cube()) throw AmbientError("graph morphisms pull back cycles on Gamma^d");
  if (fs.size() != static_cast<std::size_t>(d))
    throw DimensionError("need " + std::to_string(d) + " morphisms, got " + std::to_string(fs.size()));
  for (const auto& f : fs) {
    if (!(*f.target() == *target.graph())) throw AmbientError("morphism target differs from the cycle's graph");
    if (!(*f.source() == *fs.front().source())) throw AmbientError("morphisms have different sources");
  }
  const Ambient source = Ambient::product(fs.front().source(), d);

  // preimages[i][t] = vertices s of the source with f_i(s) = t
  std::vector<std::vector<std::vector<std::uint32_t>>> preimages(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) {
    preimages[i].resize(target.graph()->vertex_count());
    for (std::uint32_t s = 0; s < fs[i].vertex_map().size(); ++s) preimages[i][fs[i](s)].push_back(s);
  }

  std::unordered_map<VertexId, Cycle> vertex_cache;
  auto pull_vertex = [&](VertexId v) -> const Cycle& {
    auto it = vertex_cache.find(v);
    if (it != vertex_cache.end()) return it->second;
    const ProductVertex p = target.decode(v);
    Cycle c(source, 1);
    std::vector<std::size_t> idx(fs.size(), 0);
    bool empty = false;
    for (std::size_t i = 0; i < fs.size(); ++i) empty = empty || preimages[i][p.coords[i]].empty();
    while (!empty) {
      ProductVertex q;
      for (std::size_t i = 0; i < fs.size(); ++i) q.coords.push_back(preimages[i][p.coords[i]][idx[i]]);
      const VertexId w = source.encode(q);
      c.add_term(Monomial::from_vertices(std::span(&w, 1)), 1);
      std::size_t pos = fs.size();
      while (pos > 0) {
        --pos;
        if (++idx[pos] < preimages[pos][p.coords[pos]].size()) break;
        idx[pos] = 0;
        if (pos == 0) empty = true;
      }
    }
    return vertex_cache.emplace(v, std::move(c)).first->second;
  };

  Cycle out(source, a.degree());
  for (const auto& [m, q] : a.terms()) {
    Cycle term = Cycle::one(source);
    for (const auto& f : m.factors())
      for (std::uint32_t k = 0; k < f.multiplicity && !term.is_zero(); ++k) term = term * pull_vertex(f.vertex);
    term *= q;
    out += term;
  }
  return out;
}

Cycle pullback(const CubeEmbedding& gamma, const Cycle& a) {
  const Ambient& ambient = a.ambient();
  if (ambient.is_cube()) throw AmbientError("cube embeddings pull back cycles on Gamma^d");
  const int d = ambient.dimension();
  if (gamma.dimension() != d)
    throw DimensionError("embedding of dimension " + std::to_string(gamma.dimension()) +
                         " applied to a cycle on " + ambient.describe());
  const Ambient cube = Ambient::cube(d);
  const OrderedGraph& g = *ambient.graph();

  Cycle out(cube, a.degree());
  std::vector<VertexId> support;
  for (const auto& [m, q] : a.terms()) {
    Monomial image;
    bool inside = true;
    support.clear();
    for (const auto& f : m.factors()) {
      CubeVertex cv;
      if (!preimage_in_cube(gamma, ambient.decode(f.vertex), g, cv)) {
        inside = false;
        break;
      }
      image.multiply_vertex(cv.bits, f.multiplicity);
      support.push_back(cv.bits);
    }
    if (inside && cube.is_simplex(support)) out.add_term(image, q);
  }
  return out;
}

}  // namespace chowring
