"""Shared-variable programs compiled into labeled automata.

A program is a set of sequential processes over a pool of bounded integer
variables.  Each process is a small state machine whose transitions carry an
action name, a guard over the variables, and a parallel update.  The compiled
automaton has one vertex per reachable global state and one n-cube for every
way n different processes can be mid-step concurrently: a square appears
exactly when the two steps are enabled in both orders and their effects
commute on the shared variables, and a higher cube appears exactly when all
its faces do, which reduces to the pairwise checks.

Guards are nested tuples:

    ("true",)
    ("cmp", op, var, value)        op in ==, !=, <, <=, >, >=
    ("and", [g, ...]) / ("or", [g, ...]) / ("not", g)

Effects are ("set", var, value) or ("add", var, delta), applied in parallel
against the old values; a step whose update leaves any variable outside its
domain is simply not enabled, which is how bounded counters saturate.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .exterior import Alphabet
from .hda import Hda
from .precubical import Key, PrecubicalSet

Guard = tuple
Effect = tuple[str, str, int]

_CMP = {
    "==": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
}


def eval_guard(guard: Guard, env: dict[str, int]) -> bool:
    tag = guard[0]
    if tag == "true":
        return True
    if tag == "cmp":
        _, op, var, value = guard
        return _CMP[op](env[var], value)
    if tag == "and":
        return all(eval_guard(g, env) for g in guard[1])
    if tag == "or":
        return any(eval_guard(g, env) for g in guard[1])
    if tag == "not":
        return not eval_guard(guard[1], env)
    raise ValueError(f"unknown guard tag {tag!r}")


def guard_variables(guard: Guard) -> set[str]:
    tag = guard[0]
    if tag == "true":
        return set()
    if tag == "cmp":
        return {guard[2]}
    if tag in ("and", "or"):
        out: set[str] = set()
        for g in guard[1]:
            out |= guard_variables(g)
        return out
    if tag == "not":
        return guard_variables(guard[1])
    raise ValueError(f"unknown guard tag {tag!r}")


@dataclass(frozen=True)
class SharedVariable:
    """A bounded integer variable with one or more allowed start values."""

    name: str
    domain: tuple[int, ...]
    initial: tuple[int, ...]


@dataclass(frozen=True)
class Transition:
    source: str
    target: str
    action: str
    guard: Guard = ("true",)
    effects: tuple[Effect, ...] = ()


@dataclass(frozen=True)
class Process:
    name: str
    states: tuple[str, ...]
    start: str
    transitions: tuple[Transition, ...]


@dataclass(frozen=True)
class SharedVariableProgram:
    name: str
    variables: tuple[SharedVariable, ...]
    processes: tuple[Process, ...]


def validate_program(prog: SharedVariableProgram) -> list[str]:
    """Well-formedness defects as human-readable messages."""
    out = []
    var_names = [v.name for v in prog.variables]
    if len(set(var_names)) != len(var_names):
        out.append("duplicate variable names")
    for v in prog.variables:
        if not v.domain:
            out.append(f"variable {v.name}: empty domain")
        if len(set(v.domain)) != len(v.domain):
            out.append(f"variable {v.name}: repeated domain values")
        if not v.initial:
            out.append(f"variable {v.name}: no initial value")
        for x in v.initial:
            if x not in v.domain:
                out.append(f"variable {v.name}: initial value {x} outside domain")
    proc_names = [p.name for p in prog.processes]
    if len(set(proc_names)) != len(proc_names):
        out.append("duplicate process names")
    known = set(var_names)
    actions = []
    for p in prog.processes:
        if len(set(p.states)) != len(p.states):
            out.append(f"process {p.name}: repeated state names")
        if p.start not in p.states:
            out.append(f"process {p.name}: start state {p.start!r} undeclared")
        for t in p.transitions:
            actions.append(t.action)
            where = f"process {p.name}, action {t.action}"
            if t.source not in p.states or t.target not in p.states:
                out.append(f"{where}: endpoint state undeclared")
            try:
                missing = guard_variables(t.guard) - known
            except (ValueError, IndexError, TypeError):
                out.append(f"{where}: malformed guard")
                missing = set()
            if missing:
                out.append(f"{where}: guard reads unknown variables {sorted(missing)}")
            touched = set()
            for eff in t.effects:
                if len(eff) != 3 or eff[0] not in ("set", "add"):
                    out.append(f"{where}: malformed effect {eff!r}")
                    continue
                _, var, _ = eff
                if var not in known:
                    out.append(f"{where}: effect writes unknown variable {var!r}")
                if var in touched:
                    out.append(f"{where}: two effects write {var!r}")
                touched.add(var)
    if len(set(actions)) != len(actions):
        out.append("action names must be distinct across the whole program")
    return out


def assert_valid_program(prog: SharedVariableProgram) -> None:
    bad = validate_program(prog)
    if bad:
        raise ValueError("invalid program:\n" + "\n".join(bad))


# A global state is (local states by process, variable values in declaration
# order).  Both tuples, so states are hashable and directly comparable.
State = tuple[tuple[str, ...], tuple[int, ...]]


def initial_states(prog: SharedVariableProgram) -> list[State]:
    locs = tuple(p.start for p in prog.processes)
    choices = [v.initial for v in prog.variables]
    return [(locs, vals) for vals in product(*choices)]


def fire(prog: SharedVariableProgram, state: State, pid: int, t: Transition) -> State | None:
    """The successor state, or None when the step is not enabled."""
    locs, vals = state
    if locs[pid] != t.source:
        return None
    env = {v.name: x for v, x in zip(prog.variables, vals)}
    if not eval_guard(t.guard, env):
        return None
    new = dict(env)
    for op, var, amount in t.effects:
        new[var] = amount if op == "set" else env[var] + amount
    for v in prog.variables:
        if new[v.name] not in v.domain:
            return None
    locs2 = locs[:pid] + (t.target,) + locs[pid + 1 :]
    return (locs2, tuple(new[v.name] for v in prog.variables))


def state_key(state: State) -> str:
    locs, vals = state
    return ",".join(locs) + "|" + ",".join(str(x) for x in vals)


def _cube_key(state: State, moves: tuple[tuple[int, Transition], ...]) -> str:
    return state_key(state) + "".join("!" + t.action for _, t in moves)


def reachable_states(prog: SharedVariableProgram) -> dict[str, State]:
    """All states reachable from the initial ones, keyed, in discovery order."""
    seen: dict[str, State] = {}
    queue: deque[State] = deque()
    for s in initial_states(prog):
        k = state_key(s)
        if k not in seen:
            seen[k] = s
            queue.append(s)
    while queue:
        s = queue.popleft()
        for pid, proc in enumerate(prog.processes):
            for t in proc.transitions:
                s2 = fire(prog, s, pid, t)
                if s2 is None:
                    continue
                k2 = state_key(s2)
                if k2 not in seen:
                    seen[k2] = s2
                    queue.append(s2)
    return seen


def _enabled_moves(
    prog: SharedVariableProgram, state: State
) -> Iterator[tuple[int, Transition, State]]:
    for pid, proc in enumerate(prog.processes):
        for t in proc.transitions:
            s2 = fire(prog, state, pid, t)
            if s2 is not None:
                yield pid, t, s2


def program_to_hda(prog: SharedVariableProgram) -> Hda:
    """Compile to a labeled automaton; see the module docstring for the rules."""
    assert_valid_program(prog)
    states = reachable_states(prog)
    enabled: dict[str, list[tuple[int, Transition, State]]] = {
        k: list(_enabled_moves(prog, s)) for k, s in states.items()
    }

    cells: dict[int, list[Key]] = {0: list(states)}
    faces: dict[tuple[int, Key], tuple[tuple[Key, ...], tuple[Key, ...]]] = {}
    labels: dict[Key, tuple[str, ...]] = {}

    # Cubes in dimension n are keyed by (state, moves) with moves sorted by
    # process id; this table remembers the pair behind each key.
    current: dict[str, tuple[State, tuple[tuple[int, Transition], ...]]] = {
        k: (s, ()) for k, s in states.items()
    }

    n = 1
    while current:
        following: dict[str, tuple[State, tuple[tuple[int, Transition], ...]]] = {}
        keys_n: list[Key] = []
        for key, (state, moves) in current.items():
            top_pid = moves[-1][0] if moves else -1
            for pid, t, _ in enabled[state_key(state)]:
                if pid <= top_pid:
                    continue
                cand = moves + ((pid, t),)
                face_d0 = []
                face_d1 = []
                ok = True
                ends = set()
                for i in range(n):
                    rest = cand[:i] + cand[i + 1 :]
                    k0 = _cube_key(state, rest)
                    if n == 1 or k0 in current:
                        face_d0.append(k0)
                    else:
                        ok = False
                        break
                    mid = fire(prog, state, cand[i][0], cand[i][1])
                    if mid is None:
                        ok = False
                        break
                    k1 = _cube_key(mid, rest)
                    if n == 1 or k1 in current:
                        face_d1.append(k1)
                    else:
                        ok = False
                        break
                    if n == 2:
                        other = rest[0]
                        far = fire(prog, mid, other[0], other[1])
                        if far is None:
                            ok = False
                            break
                        ends.add(state_key(far))
                if not ok or (n == 2 and len(ends) != 1):
                    continue
                ck = _cube_key(state, cand)
                following[ck] = (state, cand)
                keys_n.append(ck)
                faces[(n, ck)] = (tuple(face_d0), tuple(face_d1))
                if n == 1:
                    labels[ck] = (t.action,)
        if keys_n:
            cells[n] = keys_n
        current = following
        n += 1

    letters = [t.action for p in prog.processes for t in p.transitions]
    start = frozenset((0, state_key(s)) for s in initial_states(prog))
    return Hda(
        complex=PrecubicalSet(cells, faces),
        alphabet=Alphabet(dict.fromkeys(letters)),
        labels=labels,
        initial=start,
        final=start,
    )
