"""Noncommutative rewriting: normal forms, completion and confluence checks.

Words are compared by total root height, then by torus weight, then
lexicographically with a proper prefix counting as smaller. Every letter has
positive height or positive torus weight, so this is a well-order compatible
with concatenation.
"""

import heapq
import itertools

from qenvelope.cyclo import CycloNum
from qenvelope.pbw.ncpoly import NcElement

_BIG = 1 << 30


class CompletionError(RuntimeError):
    """Completion did not stabilize; carries the critical pair that was being resolved."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class RewriteSystem:
    def __init__(self, level, heights, kweights, names=None):
        self.level = level
        self.heights = tuple(heights)
        self.kweights = tuple(kweights)
        self.names = tuple(names) if names else tuple(str(i) for i in range(len(heights)))
        self.rules = {}
        self._lengths = ()

    # -- ordering ------------------------------------------------------------

    def key(self, w):
        h, k = self.heights, self.kweights
        return (sum(h[x] for x in w), sum(k[x] for x in w), w)

    def _rkey(self, w):
        h, k = self.heights, self.kweights
        return (-sum(h[x] for x in w), -sum(k[x] for x in w), tuple(-x for x in w) + (_BIG,))

    def leading_word(self, terms):
        return max(terms, key=self.key)

    # -- rules ---------------------------------------------------------------

    def _refresh(self):
        self._lengths = tuple(sorted({len(u) for u in self.rules}))

    def add_rule(self, lhs, rhs):
        self.rules[tuple(lhs)] = dict(rhs)
        self._refresh()

    def remove_rule(self, lhs):
        out = self.rules.pop(lhs)
        self._refresh()
        return out

    def find(self, w):
        """Leftmost ``(position, length)`` of a rule left side inside ``w``."""
        rules = self.rules
        lengths = self._lengths
        n = len(w)
        for i in range(n):
            for length in lengths:
                if i + length > n:
                    break
                if w[i : i + length] in rules:
                    return i, length
        return None

    def is_normal(self, w):
        return self.find(w) is None

    # -- reduction -----------------------------------------------------------

    def reduce_terms(self, terms):
        """Normal form of a ``{word: coeff}`` map (largest word rewritten first)."""
        work = {w: c for w, c in terms.items() if c}
        heap = [(self._rkey(w), w) for w in work]
        heapq.heapify(heap)
        out = {}
        rules = self.rules
        while heap:
            _, w = heapq.heappop(heap)
            c = work.pop(w, None)
            if c is None or not c:
                continue
            m = self.find(w)
            if m is None:
                out[w] = c
                continue
            i, length = m
            pre, post = w[:i], w[i + length :]
            for rw, rc in rules[w[i : i + length]].items():
                nw = pre + rw + post
                v = c * rc
                old = work.get(nw)
                if old is None:
                    work[nw] = v
                    heapq.heappush(heap, (self._rkey(nw), nw))
                else:
                    work[nw] = old + v
        return out

    def normal_form(self, element):
        return NcElement(element.level, self.reduce_terms(element.terms))

    # -- completion ----------------------------------------------------------

    def _overlaps(self, u, v):
        """Proper overlaps ``u = x s``, ``v = s y`` with ``s`` nonempty."""
        for k in range(1, min(len(u), len(v))):
            if u[-k:] == v[:k]:
                yield k

    def _s_poly(self, u, v, k):
        ru, rv = self.rules[u], self.rules[v]
        tail, head = v[k:], u[: len(u) - k]
        out = {}
        for w, c in ru.items():
            out[w + tail] = c
        for w, c in rv.items():
            nw = head + w
            s = out.get(nw)
            out[nw] = -c if s is None else s - c
        return out

    def complete(self, relations, max_rules=5000, labels=None):
        """Knuth-Bendix style completion of ``relations`` (``{word: coeff}`` maps).

        Raises :class:`CompletionError` if the rule count exceeds ``max_rules``.
        """
        counter = itertools.count()
        queue = []

        def push(terms, origin):
            terms = {w: c for w, c in terms.items() if c}
            if terms:
                lt = self.leading_word(terms)
                heapq.heappush(queue, (self.key(lt), next(counter), terms, origin))

        for idx, rel in enumerate(relations):
            push(rel, labels[idx] if labels else f"relation {idx}")
        while queue:
            _, _, terms, origin = heapq.heappop(queue)
            terms = self.reduce_terms(terms)
            if not terms:
                continue
            lt = self.leading_word(terms)
            lc = terms[lt]
            inv = lc.inverse()
            rhs = {w: -(c * inv) for w, c in terms.items() if w != lt}
            for u in [u for u in self.rules if _contains(u, lt)]:
                old = self.remove_rule(u)
                back = {w: -c for w, c in old.items()}
                back[u] = CycloNum.one(self.level)
                push(back, ("reinserted", self._fmt(u)))
            self.add_rule(lt, rhs)
            if len(self.rules) > max_rules:
                raise CompletionError(
                    f"completion exceeded {max_rules} rules while resolving {origin}", origin
                )
            for u in list(self.rules):
                for k in self._overlaps(u, lt):
                    push(self._s_poly(u, lt, k), (self._fmt(u), self._fmt(lt)))
                if u != lt:
                    for k in self._overlaps(lt, u):
                        push(self._s_poly(lt, u, k), (self._fmt(lt), self._fmt(u)))
        for u in list(self.rules):
            self.rules[u] = self.reduce_terms(self.rules[u])
        return self

    def critical_pairs(self):
        for u in self.rules:
            for v in self.rules:
                for k in self._overlaps(u, v):
                    yield u, v, k

    def check_confluence(self):
        """All critical pairs that do not resolve, as ``(u, v, overlap, residue)``."""
        bad = []
        for u, v, k in self.critical_pairs():
            res = self.reduce_terms(self._s_poly(u, v, k))
            if res:
                bad.append((u, v, k, res))
        for u in self.rules:
            for v in self.rules:
                if u != v and _contains(u, v):
                    bad.append((u, v, None, "inclusion"))
        return bad

    def _fmt(self, w):
        return "*".join(self.names[x] for x in w) or "1"

    # -- normal words --------------------------------------------------------

    def count_normal_words(self, limit=10**7):
        """Number of irreducible words; ``ValueError`` if it exceeds ``limit``."""
        size = len(self.heights)
        rules = self.rules
        lengths = self._lengths
        count = 0
        stack = [()]
        while stack:
            w = stack.pop()
            count += 1
            if count > limit:
                raise ValueError(f"more than {limit} normal words")
            for x in range(size):
                nw = w + (x,)
                if any(len(nw) >= n and nw[-n:] in rules for n in lengths):
                    continue
                stack.append(nw)
        return count

    def leading_words(self):
        return sorted(self.rules, key=self.key)

    # -- serialization -------------------------------------------------------

    def to_json(self):
        return {
            "level": self.level,
            "heights": list(self.heights),
            "kweights": list(self.kweights),
            "alphabet": list(self.names),
            "rules": [
                {
                    "lhs": list(u),
                    "rhs": [
                        {"word": list(w), "coeff": c.to_json()}
                        for w, c in sorted(self.rules[u].items(), key=lambda t: self.key(t[0]))
                    ],
                }
                for u in self.leading_words()
            ],
        }

    @classmethod
    def from_json(cls, data):
        level = data["level"]
        sys = cls(level, data["heights"], data["kweights"], data["alphabet"])
        for rule in data["rules"]:
            rhs = {tuple(t["word"]): CycloNum.from_json(level, t["coeff"]) for t in rule["rhs"]}
            sys.rules[tuple(rule["lhs"])] = rhs
        sys._refresh()
        return sys


def _contains(u, v):
    """Whether ``v`` occurs as a contiguous subword of ``u``."""
    n, m = len(u), len(v)
    return any(u[i : i + m] == v for i in range(n - m + 1))
