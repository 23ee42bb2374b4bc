"""Deterministic finite automata with output (DFAO) over base-k digit input,
least-significant-digit first, plus the k-kernel machinery used to certify or
profile automaticity of digit sequences.

The value of a DFAO at n is the output of the state reached from the initial
state along the base-k digits of n, least significant first; n = 0 reads the
empty word.  Outputs are hashable symbols (ints, strings or tuples)."""

import json

from .errors import DomainError


class DFAO:
    __slots__ = ("base", "transitions", "outputs", "initial")

    def __init__(self, base, transitions, outputs, initial=0):
        if base < 2:
            raise DomainError("base must be at least 2")
        self.base = base
        self.transitions = [list(row) for row in transitions]
        self.outputs = list(outputs)
        self.initial = initial
        n = len(self.transitions)
        if len(self.outputs) != n:
            raise DomainError("outputs and transitions disagree on state count")
        for row in self.transitions:
            if len(row) != base:
                raise DomainError("each state needs %d transitions" % base)
            for t in row:
                if not (0 <= t < n):
                    raise DomainError("transition target out of range")

    def __len__(self):
        return len(self.transitions)

    def step(self, state, digit):
        return self.transitions[state][digit]

    def eval(self, n):
        if n < 0:
            raise DomainError("index must be nonnegative")
        state = self.initial
        base = self.base
        while n:
            state = self.transitions[state][n % base]
            n //= base
        return self.outputs[state]

    def sequence(self, count, offset=0):
        return [self.eval(offset + i) for i in range(count)]

    def __eq__(self, other):
        if not isinstance(other, DFAO):
            return NotImplemented
        return (self.base == other.base and self.initial == other.initial
                and self.transitions == other.transitions
                and self.outputs == other.outputs)

    def __repr__(self):
        return "DFAO(base=%d, states=%d)" % (self.base, len(self))

    # -- serialization ------------------------------------------------------
    def to_json_dict(self):
        def enc(sym):
            if isinstance(sym, tuple):
                return list(sym)
            return sym

        return {
            "base": self.base,
            "initial": self.initial,
            "states": [
                {"transitions": list(row), "output": enc(self.outputs[i])}
                for i, row in enumerate(self.transitions)
            ],
        }

    def to_json(self):
        return json.dumps(self.to_json_dict(), sort_keys=True,
                          separators=(",", ":"))

    @staticmethod
    def from_json_dict(data):
        def dec(sym):
            if isinstance(sym, list):
                return tuple(sym)
            return sym

        states = data["states"]
        return DFAO(
            data["base"],
            [s["transitions"] for s in states],
            [dec(s["output"]) for s in states],
            data["initial"],
        )

    @staticmethod
    def from_json(text):
        return DFAO.from_json_dict(json.loads(text))


def dfao_eval(machine, n):
    return machine.eval(n)


def is_padding_consistent(machine):
    """Trailing zero digits must not change the output: for every reachable
    state s, output(step(s, 0)) == output(s)."""
    for s in _reachable(machine):
        if machine.outputs[machine.step(s, 0)] != machine.outputs[s]:
            return False
    return True


def _reachable(machine):
    seen = [False] * len(machine)
    seen[machine.initial] = True
    stack = [machine.initial]
    order = [machine.initial]
    while stack:
        s = stack.pop()
        for d in range(machine.base):
            t = machine.transitions[s][d]
            if not seen[t]:
                seen[t] = True
                stack.append(t)
                order.append(t)
    return order


def dfao_minimize(machine):
    """Moore partition refinement on the reachable part; the result is the
    unique minimal complete DFAO computing the same sequence."""
    order = _reachable(machine)
    index = {s: i for i, s in enumerate(order)}
    trans = [[index[machine.transitions[s][d]] for d in range(machine.base)]
             for s in order]
    outs = [machine.outputs[s] for s in order]
    n = len(order)

    color = {}
    coloring = [0] * n
    for i in range(n):
        coloring[i] = color.setdefault(outs[i], len(color))
    while True:
        sig = {}
        new = [0] * n
        for i in range(n):
            key = (coloring[i],) + tuple(coloring[trans[i][d]]
                                         for d in range(machine.base))
            new[i] = sig.setdefault(key, len(sig))
        if len(sig) == len(set(coloring)):
            coloring = new
            break
        coloring = new

    classes = sorted(set(coloring))
    remap = {c: i for i, c in enumerate(classes)}
    rep_of = {}
    for i in range(n):
        rep_of.setdefault(coloring[i], i)
    new_trans = []
    new_outs = []
    for c in classes:
        i = rep_of[c]
        new_trans.append([remap[coloring[trans[i][d]]]
                          for d in range(machine.base)])
        new_outs.append(outs[i])
    return DFAO(machine.base, new_trans, new_outs, remap[coloring[0]])


def kernel_of_dfao(machine):
    """The k-kernel of the machine's sequence, one DFAO per element: after
    minimization, distinct states reachable from the initial state are
    exactly the distinct subsequences n -> a(n*k^i + j)."""
    if not is_padding_consistent(machine):
        raise DomainError("kernel extraction needs a padding-consistent DFAO")
    m = dfao_minimize(machine)
    return [DFAO(m.base, m.transitions, m.outputs, s) for s in range(len(m))]


def kernel_profile(prefix, k, depth, length):
    """Counts of distinct length-`length` windows among the subsequences
    n -> prefix[n*k^i + j] for i <= d, per depth d <= depth.  Bounded counts
    are evidence of k-automaticity, unbounded growth evidence against;
    neither is a proof."""
    prefix = list(prefix)
    need = (length - 1) * (k ** depth) + (k ** depth - 1) + 1
    if len(prefix) < need:
        raise DomainError(
            "insufficient prefix: depth %d windows of length %d need %d "
            "terms, got %d" % (depth, length, need, len(prefix)))
    counts = []
    seen = set()
    for d in range(depth + 1):
        step = k ** d
        for j in range(step):
            seen.add(tuple(prefix[n * step + j] for n in range(length)))
        counts.append(len(seen))
    return KernelProfile(k, depth, len(prefix), length, counts)


class KernelProfile:
    def __init__(self, k, depth, prefix_len, length, counts):
        self.k = k
        self.depth = depth
        self.prefix_len = prefix_len
        self.length = length
        self.counts = counts  # counts[d] = distinct windows among i <= d

    def bounded(self):
        """Heuristic: the last two depths added nothing new."""
        if len(self.counts) < 3:
            return False
        return self.counts[-1] == self.counts[-3]

    def strictly_increasing(self, from_depth=0):
        cs = self.counts[from_depth:]
        return all(b > a for a, b in zip(cs, cs[1:]))

    def __repr__(self):
        return "KernelProfile(k=%d, counts=%s)" % (self.k, self.counts)


def periodic_to_dfao(cert, k):
    """DFAO computing n -> digit index at absolute position start + n of an
    exact periodicity certificate (any base k: eventually periodic sequences
    are automatic in every base)."""
    if cert.status != "exact":
        raise DomainError("periodic_to_dfao needs an exact certificate")
    pre = cert.preperiod - cert.start
    L = cert.period

    def value_at(v):
        return cert.digit_index(cert.start + v)

    # state: (saturated, v or v mod L, k^pos mod L, min(k^pos, cap))
    cap = pre + 1

    def initial_state():
        if pre == 0:
            return (True, 0, 1 % L, min(1, cap))
        return (False, 0, 1 % L, min(1, cap))

    def step(state, digit):
        sat, v, pw_mod, pw_cap = state
        if sat:
            v = (v + digit * pw_mod) % L
        elif digit:
            # pw_cap < cap means pw_cap is exactly k^pos
            if pw_cap < cap and v + digit * pw_cap < pre:
                v = v + digit * pw_cap
            else:
                sat = True
                v = (v + digit * pw_mod) % L
        return (sat, v, (pw_mod * k) % L, min(pw_cap * k, cap))

    def out_of(state):
        sat, v, _, _ = state
        if not sat:
            return value_at(v)
        # some index >= pre congruent to v mod L
        idx = pre + ((v - pre) % L)
        return value_at(idx)

    init = initial_state()
    states = {init: 0}
    order = [init]
    trans = []
    i = 0
    while i < len(order):
        st = order[i]
        row = []
        for d in range(k):
            nxt = step(st, d)
            if nxt not in states:
                states[nxt] = len(order)
                order.append(nxt)
            row.append(states[nxt])
        trans.append(row)
        i += 1
    outs = [out_of(st) for st in order]
    return dfao_minimize(DFAO(k, trans, outs, 0))


def dfao_product(a, b, combine):
    """Product automaton with outputs combine(out_a, out_b)."""
    if a.base != b.base:
        raise DomainError("product needs a common base")
    states = {(a.initial, b.initial): 0}
    order = [(a.initial, b.initial)]
    trans = []
    i = 0
    while i < len(order):
        sa, sb = order[i]
        row = []
        for d in range(a.base):
            nxt = (a.transitions[sa][d], b.transitions[sb][d])
            if nxt not in states:
                states[nxt] = len(order)
                order.append(nxt)
            row.append(states[nxt])
        trans.append(row)
        i += 1
    outs = [combine(a.outputs[sa], b.outputs[sb]) for sa, sb in order]
    return DFAO(a.base, trans, outs, 0)


def dfao_map_output(machine, func):
    return DFAO(machine.base, machine.transitions,
                [func(o) for o in machine.outputs], machine.initial)


def group_base(machine, j):
    """Convert base k to base k^j by reading digits in groups of j (the new
    digit D = d_0 + d_1 k + ... + d_{j-1} k^{j-1})."""
    k = machine.base
    newbase = k ** j
    trans = []
    for s in range(len(machine)):
        row = []
        for digit in range(newbase):
            t = s
            d = digit
            for _ in range(j):
                t = machine.transitions[t][d % k]
                d //= k
            row.append(t)
        trans.append(row)
    return DFAO(newbase, trans, list(machine.outputs), machine.initial)


def split_base(machine, j):
    """Convert base k^j to base k by buffering j low-order digits before
    each original transition; padding consistency of the input machine makes
    the partial-group outputs well defined."""
    K = machine.base
    k = 2
    while k ** j < K:
        k += 1
    if k ** j != K:
        raise DomainError("base %d is not a perfect %d-th power" % (K, j))
    if not is_padding_consistent(machine):
        raise DomainError("base splitting needs a padding-consistent DFAO")

    states = {(machine.initial, 0, 0): 0}
    order = [(machine.initial, 0, 0)]
    trans = []
    i = 0
    while i < len(order):
        s, acc, cnt = order[i]
        row = []
        for d in range(k):
            acc2 = acc + d * (k ** cnt)
            cnt2 = cnt + 1
            if cnt2 == j:
                nxt = (machine.transitions[s][acc2], 0, 0)
            else:
                nxt = (s, acc2, cnt2)
            if nxt not in states:
                states[nxt] = len(order)
                order.append(nxt)
            row.append(states[nxt])
        trans.append(row)
        i += 1
    outs = []
    for s, acc, cnt in order:
        if cnt == 0:
            outs.append(machine.outputs[s])
        else:
            outs.append(machine.outputs[machine.transitions[s][acc]])
    return DFAO(k, trans, outs, 0)
