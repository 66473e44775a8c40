#include "qlocal/actions.hpp"

#include <algorithm>
#include <unordered_map>

namespace qlocal {

Permutation canonical_coset_rep(const StabChain& sub, const Permutation& x) {
  Permutation acc = x;
  const auto& levels = sub.levels();
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const auto& lv = levels[l];
    if (lv.orbit.size() <= 1) continue;  // single-point level, nothing to pick
    // Pick the orbit point whose image under acc is least; acc is injective,
    // so the choice (and with it the whole walk) is unique per coset.
    Point best = lv.orbit[0];
    for (Point d : lv.orbit)
      if (acc[d] < acc[best]) best = d;
    if (best != lv.base) acc = sub.transversal(l, best).then(acc);
  }
  return acc;
}

std::optional<std::uint32_t> CosetSpace::coset_of(const Permutation& x) const {
  Permutation c = canonical_coset_rep(point.chain(), x);
  auto it = rep_index.find(c);
  if (it == rep_index.end()) return std::nullopt;
  return it->second;
}

bool CosetSpace::verify_distinct() const {
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (!parent.contains(reps[i])) return false;
    for (std::size_t j = i + 1; j < reps.size(); ++j)
      if (point.contains(reps[i].then(reps[j].inverse()))) return false;
  }
  return true;
}

namespace {

// Kernel of the coset action through one stabilizer chain on the disjoint
// union of the moved points and the coset ids: prescribing all coset ids as
// leading base points leaves exactly the kernel below them.
PermGroup kernel_by_combined_chain(const PermGroup& g,
                                   const std::vector<Permutation>& gen_images,
                                   std::uint32_t index,
                                   const mpz_class& image_order) {
  const Point deg = g.degree();
  const Point total = deg + index;
  std::vector<Permutation> combined;
  combined.reserve(g.generators().size());
  for (std::size_t k = 0; k < g.generators().size(); ++k) {
    std::vector<Point> img(total);
    for (Point p = 0; p < deg; ++p) img[p] = g.generators()[k][p];
    for (Point i = 0; i < index; ++i) img[deg + i] = deg + gen_images[k][i];
    combined.emplace_back(std::move(img));
  }
  std::vector<Point> prescribed(index);
  for (Point i = 0; i < index; ++i) prescribed[i] = deg + i;
  mpz_class order = g.order();
  StabChain cc(total, std::move(combined), std::move(prescribed), &order);

  // The leading levels realise the image; their transversal product must
  // match the image's own chain (two independent routes to |image|).
  mpz_class leading = 1;
  for (std::uint32_t l = 0; l < index; ++l)
    leading *= static_cast<unsigned long>(
        std::max<std::size_t>(cc.levels()[l].orbit.size(), 1));
  if (leading != image_order)
    throw Error("coset action: image order mismatch across routes");

  std::vector<Permutation> kgens;
  for (const Permutation& k : cc.level_generators(index)) {
    std::vector<Point> img(deg);
    for (Point p = 0; p < deg; ++p) img[p] = k[p];
    Permutation r{std::move(img)};
    if (!r.is_identity()) kgens.push_back(std::move(r));
  }
  mpz_class korder = g.order() / image_order;
  if (kgens.empty()) return PermGroup::trivial(deg);
  return PermGroup(deg, std::move(kgens), std::move(korder));
}

} // namespace

CosetAction coset_action(const PermGroup& g, const PermGroup& h,
                         std::uint64_t max_index,
                         const PermGroup* kernel_hint, const Budget& budget) {
  if (h.degree() != g.degree())
    throw Error("coset action: degree mismatch");
  for (const Permutation& s : h.generators())
    if (!g.contains(s)) throw Error("coset action: h is not a subgroup of g");

  mpz_class idx_z = g.order() / h.order();
  if (idx_z * h.order() != g.order())
    throw Error("coset action: order division failed");
  if (idx_z > static_cast<unsigned long>(max_index))
    throw Error("coset action: index " + idx_z.get_str() + " exceeds limit " +
                std::to_string(max_index));
  const auto index = static_cast<std::uint32_t>(idx_z.get_ui());
  if (static_cast<std::uint64_t>(index) * g.degree() >
      budget.enumeration_cells)
    throw BudgetExceeded("coset action: representative table too large");

  const StabChain& hc = h.chain();
  CosetSpace space{g, h, {}, index, {}};
  space.reps.push_back(canonical_coset_rep(hc, Permutation(g.degree())));
  space.rep_index.emplace(space.reps[0], 0);

  const auto& gens = g.generators();
  std::vector<std::vector<Point>> images(gens.size());
  for (auto& v : images) v.reserve(index);

  for (std::uint32_t i = 0; i < space.reps.size(); ++i) {
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Permutation c = canonical_coset_rep(hc, space.reps[i].then(gens[k]));
      auto [it, fresh] =
          space.rep_index.emplace(std::move(c), static_cast<std::uint32_t>(
                                                    space.reps.size()));
      if (fresh) {
        if (space.reps.size() >= index)
          throw Error("coset action: more cosets than the index allows");
        space.reps.push_back(it->first);
      }
      images[k].push_back(it->second);
    }
  }
  if (space.reps.size() != index)
    throw Error("coset action: coset count does not match the index");

  std::vector<Permutation> gen_images;
  gen_images.reserve(gens.size());
  for (auto& v : images) gen_images.emplace_back(std::move(v));

  PermGroup image(index, gen_images);
  mpz_class image_order = image.order();

  PermGroup kernel = PermGroup::trivial(g.degree());
  if (kernel_hint != nullptr) {
    // A subgroup that is normal in g and contained in h lies in the kernel;
    // the order product then forces equality.
    for (const Permutation& k : kernel_hint->generators()) {
      if (!h.contains(k))
        throw Error("coset action: kernel hint not inside the subgroup");
      for (const Permutation& s : gens)
        if (!kernel_hint->contains(k.conjugated_by(s)))
          throw Error("coset action: kernel hint not normal");
    }
    if (kernel_hint->order() * image_order != g.order())
      throw Error("coset action: kernel hint order mismatch");
    kernel = *kernel_hint;
  } else {
    kernel = kernel_by_combined_chain(g, gen_images, index, image_order);
  }

  if (image_order * kernel.order() != g.order())
    throw Error("coset action: order factorisation failed");

  if (index <= 256 && !space.verify_distinct())
    throw Error("coset action: representative distinctness check failed");

  return CosetAction{
      ActionImage{g, std::move(image), std::move(kernel),
                  std::move(gen_images)},
      std::move(space)};
}

} // namespace qlocal
