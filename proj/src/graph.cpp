#include "cbiont/graph.hpp"

#include <algorithm>

namespace cbiont {

std::string Triple::ntriples_line() const {
  return subject.ntriples() + " " + predicate.ntriples() + " " + object.ntriples() + " .";
}

namespace detail {

int compare_spo(const Triple& a, const Triple& b) {
  if (const int c = a.subject.compare(b.subject)) return c;
  if (const int c = a.predicate.compare(b.predicate)) return c;
  return a.object.compare(b.object);
}

bool SpoOrder::operator()(const Triple& a, const SpKey& k) const {
  if (const int c = a.subject.compare(k.s)) return c < 0;
  return a.predicate.compare(k.p) < 0;
}
bool SpoOrder::operator()(const SpKey& k, const Triple& b) const {
  if (const int c = k.s.compare(b.subject)) return c < 0;
  return k.p.compare(b.predicate) < 0;
}

bool PosOrder::operator()(const Triple& a, const Triple& b) const {
  if (const int c = a.predicate.compare(b.predicate)) return c < 0;
  if (const int c = a.object.compare(b.object)) return c < 0;
  return a.subject.compare(b.subject) < 0;
}
bool PosOrder::operator()(const Triple& a, const PoKey& k) const {
  if (const int c = a.predicate.compare(k.p)) return c < 0;
  return a.object.compare(k.o) < 0;
}
bool PosOrder::operator()(const PoKey& k, const Triple& b) const {
  if (const int c = k.p.compare(b.predicate)) return c < 0;
  return k.o.compare(b.object) < 0;
}

bool OspOrder::operator()(const Triple& a, const Triple& b) const {
  if (const int c = a.object.compare(b.object)) return c < 0;
  if (const int c = a.subject.compare(b.subject)) return c < 0;
  return a.predicate.compare(b.predicate) < 0;
}
bool OspOrder::operator()(const Triple& a, const OsKey& k) const {
  if (const int c = a.object.compare(k.o)) return c < 0;
  return a.subject.compare(k.s) < 0;
}
bool OspOrder::operator()(const OsKey& k, const Triple& b) const {
  if (const int c = k.o.compare(b.object)) return c < 0;
  return k.s.compare(b.subject) < 0;
}

}  // namespace detail

bool Graph::insert(Triple t) {
  auto [it, inserted] = spo_.insert(std::move(t));
  if (!inserted) return false;
  pos_.insert(*it);
  osp_.insert(*it);
  return true;
}

bool Graph::remove(const Triple& t) {
  if (spo_.erase(t) == 0) return false;
  pos_.erase(t);
  osp_.erase(t);
  return true;
}

bool Graph::contains(const Triple& t) const { return spo_.count(t) != 0; }

namespace {

bool agrees(const Triple& t, const std::optional<Iri>& s, const std::optional<Iri>& p,
            const std::optional<Term>& o) {
  if (s && !(t.subject == *s)) return false;
  if (p && !(t.predicate == *p)) return false;
  if (o && !(t.object == *o)) return false;
  return true;
}

void sort_spo(std::vector<Triple>& out) {
  std::sort(out.begin(), out.end(),
            [](const Triple& a, const Triple& b) { return detail::compare_spo(a, b) < 0; });
}

}  // namespace

std::vector<Triple> Graph::match(const std::optional<Iri>& s, const std::optional<Iri>& p,
                                 const std::optional<Term>& o) const {
  std::vector<Triple> out;

  if (s && p && o) {
    const Triple probe(*s, *p, *o);
    if (contains(probe)) out.push_back(probe);
    return out;
  }

  if (s) {
    // SPO index; key prefix (s) or (s, p).
    auto [lo, hi] = p ? spo_.equal_range(detail::SpKey{*s, *p})
                      : spo_.equal_range(detail::SKey{*s});
    for (auto it = lo; it != hi; ++it)
      if (agrees(*it, s, p, o)) out.push_back(*it);
    // Range is already in (S,P,O) order.
    return out;
  }

  if (p) {
    // POS index; key prefix (p) or (p, o).
    auto [lo, hi] = o ? pos_.equal_range(detail::PoKey{*p, *o})
                      : pos_.equal_range(detail::PKey{*p});
    for (auto it = lo; it != hi; ++it)
      if (agrees(*it, s, p, o)) out.push_back(*it);
    sort_spo(out);
    return out;
  }

  if (o) {
    // OSP index; key prefix (o).
    auto [lo, hi] = osp_.equal_range(detail::OKey{*o});
    for (auto it = lo; it != hi; ++it)
      if (agrees(*it, s, p, o)) out.push_back(*it);
    sort_spo(out);
    return out;
  }

  out.assign(spo_.begin(), spo_.end());
  return out;
}

std::vector<Triple> Graph::match_scan(IndexOrder index, const std::optional<Iri>& s,
                                      const std::optional<Iri>& p,
                                      const std::optional<Term>& o) const {
  std::vector<Triple> out;
  auto scan = [&](const auto& set) {
    for (const Triple& t : set)
      if (agrees(t, s, p, o)) out.push_back(t);
  };
  switch (index) {
    case IndexOrder::spo: scan(spo_); break;
    case IndexOrder::pos: scan(pos_); break;
    case IndexOrder::osp: scan(osp_); break;
  }
  sort_spo(out);
  return out;
}

std::size_t merge_into(Graph& into, const Graph& from) {
  std::size_t added = 0;
  for (const Triple& t : from)
    if (into.insert(t)) ++added;
  return added;
}

}  // namespace cbiont
