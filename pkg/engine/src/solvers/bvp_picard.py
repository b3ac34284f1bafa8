"""
Picard iteration for -x'' = f(t, x), x(0) = x(1) = 0, through the Green's function

    G(t, s) = t (1 - s) for t <= s,   s (1 - t) for s <= t,

so that x = F x with (F x)(t) = integral of G(t, s) f(s, x(s)) ds over [0, 1].

The kernel has a kink on s = t, so every quadrature splits there. On the grid
t_i = i / N the split point is a node and the integral is a fixed matrix-vector
product; the rules are exact on the linear pieces of G, so the row sums are
t_i (1 - t_i) / 2 <= 1/8. Under Simpson a piece of a single interval (rows 1 and
N - 1) takes the quadratic through the next node on the branch of G extended past
the kink, which keeps the quadrature error O(h^4) at every node.
"""

import csv
import math
import pathlib
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Union

import numpy as np
from scipy.integrate import simpson, trapezoid

from src.config.settings.logger_config import logger
from src.models.domain.boundary import BvpProblem, ForcingTerm, GridFunction, Quadrature, RhsKind, RhsSpec
from src.models.domain.theta import ContractionParams, ThetaFamily, ThetaSpec
from src.models.schemas.report import ContractionAudit
from src.solvers.theta_kit import audit_samples
from src.utilities.constants import ErrorMessages
from src.utilities.messages.exceptions.errors import BvpError, ConvergenceError

KERNEL_BOUND = 0.125
# integral over [s0, s1] of the quadratic through s0, s1, s2 = 2 s1 - s0, in units of h
ONE_INTERVAL_WEIGHTS = np.array([5.0, 8.0, -1.0]) / 12.0


def green_eval(t, s):
    """
    G(t, s) on [0, 1] x [0, 1]; accepts scalars or broadcastable arrays.

    Raises:
        BvpError: If any argument lies outside [0, 1].
    """
    t_arr = np.asarray(t, dtype=float)
    s_arr = np.asarray(s, dtype=float)
    if np.any((t_arr < 0) | (t_arr > 1)) or np.any((s_arr < 0) | (s_arr > 1)):
        raise BvpError(ErrorMessages.KERNEL_DOMAIN.value.format(t, s))
    value = np.where(t_arr <= s_arr, t_arr * (1 - s_arr), s_arr * (1 - t_arr))
    return float(value) if value.ndim == 0 else value


def _rule_weights(m: int, h: float, quadrature: Quadrature) -> np.ndarray:
    """Weights of the rule on m equal intervals of width h (m + 1 nodes)."""
    if m == 0:
        return np.zeros(1)
    identity = np.eye(m + 1)
    if quadrature is Quadrature.TRAPEZOID or m == 1:
        return trapezoid(identity, dx=h, axis=-1)
    return simpson(identity, dx=h, axis=-1)


def kernel_row_integral(t: float, N: int, quadrature: Quadrature = Quadrature.SIMPSON) -> float:
    """
    Integral of G(t, s) over s in [0, 1], by quadrature split at s = t.

    Each piece gets ceil(length * N) intervals. The exact value is t (1 - t) / 2.

    Args:
        t (float): Point in [0, 1].
        N (int): Resolution of the pieces.
        quadrature (Quadrature): Rule used on each piece.

    Returns:
        float: The approximate integral.
    """
    if not 0 <= t <= 1:
        raise BvpError(ErrorMessages.KERNEL_DOMAIN.value.format(t, "[0, 1]"))
    if N < 2:
        raise BvpError(ErrorMessages.GRID_TOO_SMALL.value.format(N))
    total = 0.0
    for lo, hi in ((0.0, t), (t, 1.0)):
        m = math.ceil((hi - lo) * N - 1e-12)
        if m <= 0:
            continue
        s = np.linspace(lo, hi, m + 1)
        total += float(_rule_weights(m, (hi - lo) / m, quadrature) @ green_eval(t, s))
    return total


@lru_cache(maxsize=32)
def _kernel_matrix(N: int, quadrature: Quadrature) -> np.ndarray:
    nodes = np.linspace(0.0, 1.0, N + 1)
    h = 1.0 / N
    K = np.zeros((N + 1, N + 1))
    for i in range(1, N):
        t = nodes[i]
        pieces = ((np.arange(i + 1), nodes * (1 - t)), (np.arange(i, N + 1), t * (1 - nodes)))
        for columns, branch in pieces:
            if quadrature is Quadrature.SIMPSON and columns.size == 2:
                far, kink = columns if columns[1] == i else columns[::-1]
                columns = np.array([far, kink, 2 * kink - far])
                weights = h * ONE_INTERVAL_WEIGHTS
            else:
                weights = _rule_weights(columns.size - 1, h, quadrature)
            K[i, columns] += weights * branch[columns]
    K.setflags(write=False)
    return K


def kernel_matrix(problem: BvpProblem) -> np.ndarray:
    """
    Weights K with (F x)(t_i) = sum_j K[i, j] f(t_j, x_j); rows are split at the diagonal.

    Cached per (N, quadrature); the returned array is read-only.
    """
    return _kernel_matrix(problem.n, problem.quadrature)


def apply_operator(x: GridFunction, problem: BvpProblem) -> GridFunction:
    """
    One application of the integral operator F on a grid function.

    Raises:
        BvpError: If x does not live on the problem grid.
    """
    if x.values.shape != (problem.n + 1,):
        raise BvpError(ErrorMessages.GRID_MISMATCH.value.format(x.values.size, problem.n + 1))
    values = kernel_matrix(problem) @ problem.rhs.evaluate(x.t, x.values)
    values[0] = values[-1] = 0.0
    return GridFunction(values=values, t=x.t)


@dataclass
class BvpSolution:
    solution: GridFunction
    iterations: int
    history: list[float] = field(default_factory=list)

    @property
    def step_ratios(self) -> list[float]:
        return [b / a for a, b in zip(self.history, self.history[1:]) if a > 0]


def solve_bvp(problem: BvpProblem, x0: Optional[GridFunction] = None) -> BvpSolution:
    """
    Picard iteration x_n+1 = F x_n until the sup-norm step drops to eps_fix.

    Args:
        problem (BvpProblem): Right-hand side, grid and tolerances.
        x0 (Optional[GridFunction]): Starting function; zero when None.

    Returns:
        BvpSolution: The last iterate, the iteration count and the step history.

    Raises:
        ConvergenceError: If max_iter iterations do not reach eps_fix.
    """
    x = x0 if x0 is not None else GridFunction.zeros(problem)
    history: list[float] = []
    for iteration in range(1, problem.max_iter + 1):
        x_next = apply_operator(x, problem)
        step = x_next.sup_distance(x)
        history.append(step)
        x = x_next
        if step <= problem.eps_fix:
            logger.info(f"Picard iteration for {problem.rhs.describe()} converged in {iteration} iterations")
            return BvpSolution(solution=x, iterations=iteration, history=history)
    message = ErrorMessages.BVP_NOT_CONVERGED.value.format(problem.eps_fix, problem.max_iter, history[-1])
    logger.error(message)
    raise ConvergenceError(message, history)


def residual_check(solution: GridFunction, problem: BvpProblem) -> float:
    """Max over interior nodes of |-(x_i-1 - 2 x_i + x_i+1) / h^2 - f(t_i, x_i)|."""
    x = solution.values
    second = (x[:-2] - 2 * x[1:-1] + x[2:]) / problem.h**2
    f = problem.rhs.evaluate(solution.t[1:-1], x[1:-1])
    return float(np.max(np.abs(-second - f)))


def _random_pairs(problem: BvpProblem, pairs: int, seed: int) -> list[tuple[GridFunction, GridFunction]]:
    rng = np.random.default_rng(seed)
    drawn = []
    for _ in range(pairs):
        scale = rng.uniform(0.1, 5.0)
        values = rng.normal(scale=scale, size=(2, problem.n + 1))
        values[:, 0] = values[:, -1] = 0.0
        drawn.append((GridFunction.on(problem, values[0]), GridFunction.on(problem, values[1])))
    return drawn


def estimate_lipschitz(problem: BvpProblem, pairs: int = 200, seed: int = 0) -> float:
    """Max of ||F x - F y|| / ||x - y|| in the sup norm over random grid-function pairs."""
    best = 0.0
    for x, y in _random_pairs(problem, pairs, seed):
        distance = x.sup_distance(y)
        if distance > 0:
            best = max(best, apply_operator(x, problem).sup_distance(apply_operator(y, problem)) / distance)
    return best


def audit_operator(problem: BvpProblem, pairs: int = 200, lam: float = 0.0, seed: int = 0) -> ContractionAudit:
    """
    Contraction audit of F with Theta = e^t, alpha = 1 and k = 1/8 on random pairs.

    With Theta = e^t the inequality reads ||F x - F y|| <= (||x - y|| + lam ||y - F x||) / 8.
    Random draws are numbered in order, so pair p compares draw 2 p with draw 2 p + 1
    and `worst_pair` names the two draws.
    """
    theta = ThetaSpec(ThetaFamily.EXP)
    params = ContractionParams(k=KERNEL_BOUND, lam=lam)
    samples = []
    for p, (x, y) in enumerate(_random_pairs(problem, pairs, seed)):
        Fx, Fy = apply_operator(x, problem), apply_operator(y, problem)
        samples.append((2 * p, 2 * p + 1, 1.0, Fx.sup_distance(Fy), x.sup_distance(y), y.sup_distance(Fx)))
    return audit_samples(theta, params, samples, scope="grid functions")


def parse_rhs(text: str) -> RhsSpec:
    """
    Parse a right-hand side: `constant:c`, `sin`, `sin:c`, `affine:a:g` or `scaled_sin:mu`.

    Raises:
        BvpError: On unknown names, malformed numbers, unknown forcing terms or a
            Lipschitz constant above 1.
    """
    parts = text.strip().split(":")
    name, args = parts[0].lower(), parts[1:]
    try:
        if name == RhsKind.CONSTANT.value and len(args) == 1:
            return RhsSpec(RhsKind.CONSTANT, constant=float(args[0]))
        if name == RhsKind.SIN.value and len(args) <= 1:
            return RhsSpec(RhsKind.SIN, constant=float(args[0]) if args else 0.0)
        if name == RhsKind.SCALED_SIN.value and len(args) == 1:
            return RhsSpec(RhsKind.SCALED_SIN, coefficient=float(args[0]))
        if name == RhsKind.AFFINE.value and len(args) == 2:
            forcing_names = [term.value for term in ForcingTerm]
            if args[1] not in forcing_names:
                raise BvpError(ErrorMessages.RHS_FORCING.value.format(args[1], ", ".join(forcing_names)))
            return RhsSpec(RhsKind.AFFINE, coefficient=float(args[0]), forcing=ForcingTerm(args[1]))
    except ValueError as e:
        raise BvpError(ErrorMessages.RHS_UNKNOWN.value.format(text)) from e
    raise BvpError(ErrorMessages.RHS_UNKNOWN.value.format(text))


def write_solution_csv(solution: GridFunction, path: Union[str, pathlib.Path]) -> pathlib.Path:
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "x"])
        writer.writerows((repr(float(t)), repr(float(x))) for t, x in zip(solution.t, solution.values))
    logger.info(f"Solution written to {path}")
    return path
