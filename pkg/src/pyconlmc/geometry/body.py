# Copyright (c) 2024 pyconlmc developers
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in
# all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

"""
Convex bodies the samplers are constrained to.
"""
from __future__ import annotations
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Union
import logging

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.optimize import linprog
from scipy.spatial import HalfspaceIntersection

from ..arrays import FloatArray, as_batch
from ..exceptions import InvalidBodyError

_LOGGER = logging.getLogger(__name__)

MembershipOracle = Callable[[FloatArray], bool]


@dataclass(frozen=True, eq=False)
class Ball:
    """
    Euclidean ball.
    """
    center: FloatArray
    radius: float


@dataclass(frozen=True, eq=False)
class Box:
    """
    Axis-aligned box, `lower < 0 < upper` coordinatewise.
    """
    lower: FloatArray
    upper: FloatArray


@dataclass(frozen=True, eq=False)
class Polytope:
    """
    Intersection of halfspaces `a_i^T x <= b_i`, normals stacked as rows.
    """
    normals: FloatArray
    offsets: FloatArray


@dataclass(frozen=True, eq=False)
class OracleBody:
    """
    Body known only through a membership predicate.
    """
    membership: MembershipOracle
    dim: int


Shape = Union[Ball, Box, Polytope, OracleBody]


@dataclass(frozen=True, eq=False)
class ConvexBody:
    """
    Convex compact body `K` containing the ball of radius `inner_radius`
    about the origin, and contained in the one of radius `outer_radius`.

    Use the class methods to construct the bodies, those derive the radii and
    validate the origin is interior.
    """
    shape: Shape
    inner_radius: float
    outer_radius: float
    vertices: Optional[FloatArray] = field(default=None, compare=False)

    @property
    def dim(self) -> int:
        """
        Dimension of the ambient space.
        """
        if isinstance(self.shape, Ball):
            return int(self.shape.center.shape[0])
        if isinstance(self.shape, Box):
            return int(self.shape.lower.shape[0])
        if isinstance(self.shape, Polytope):
            return int(self.shape.normals.shape[1])
        return self.shape.dim

    @property
    def is_centered_ball(self) -> bool:
        """
        Indicates the body is a ball centered at the origin.
        """
        return (
            isinstance(self.shape, Ball)
            and not np.any(self.shape.center)
        )

    @classmethod
    def ball(
        cls, radius: float, center: Optional[ArrayLike] = None,
        dim: int = 2
    ) -> ConvexBody:
        """
        Constructs a ball.

        :param radius: Radius of the ball
        :param center: Center of the ball, origin if omitted
        :param dim: Dimension, used only when `center` is omitted
        """
        c = (
            np.zeros(dim) if center is None
            else np.asarray(center, dtype=np.float64).reshape(-1)
        )
        if radius <= 0:
            raise InvalidBodyError(f'Ball radius must be positive: {radius}')
        offset = float(np.linalg.norm(c))
        if offset >= radius:
            raise InvalidBodyError(
                'Origin must be interior to the ball'
                f' (center {c}, radius {radius})'
            )
        return cls(
            shape=Ball(center=c, radius=float(radius)),
            inner_radius=radius - offset,
            outer_radius=radius + offset,
        )

    @classmethod
    def box(cls, lower: ArrayLike, upper: ArrayLike) -> ConvexBody:
        """
        Constructs a box.
        """
        low = np.asarray(lower, dtype=np.float64).reshape(-1)
        up = np.asarray(upper, dtype=np.float64).reshape(-1)
        if low.shape != up.shape:
            raise InvalidBodyError(
                f'Box bounds differ in shape: {low.shape} vs {up.shape}'
            )
        if np.any(low >= 0) or np.any(up <= 0):
            raise InvalidBodyError(
                f'Origin must be interior to the box [{low}, {up}]'
            )
        return cls(
            shape=Box(lower=low, upper=up),
            inner_radius=float(min(np.min(-low), np.min(up))),
            outer_radius=float(np.linalg.norm(np.maximum(-low, up))),
        )

    @classmethod
    def polytope(cls, normals: ArrayLike, offsets: ArrayLike) -> ConvexBody:
        """
        Constructs a bounded polytope from its halfspaces.
        """
        a_mat = np.atleast_2d(np.asarray(normals, dtype=np.float64))
        b_vec = np.asarray(offsets, dtype=np.float64).reshape(-1)
        if a_mat.shape[0] != b_vec.shape[0]:
            raise InvalidBodyError(
                f'{a_mat.shape[0]} normals given for {b_vec.shape[0]} offsets'
            )
        if np.any(b_vec <= 0):
            raise InvalidBodyError(
                f'Polytope offsets must be positive: {b_vec}'
            )
        norms = np.linalg.norm(a_mat, axis=1)
        if np.any(norms == 0):
            raise InvalidBodyError('Polytope normals must be non-zero')
        vertices = _polytope_vertices(a_mat, b_vec)
        return cls(
            shape=Polytope(normals=a_mat, offsets=b_vec),
            inner_radius=float(np.min(b_vec / norms)),
            outer_radius=float(np.max(np.linalg.norm(vertices, axis=1))),
            vertices=vertices,
        )

    @classmethod
    def oracle(
        cls, membership: MembershipOracle, dim: int, inner_radius: float,
        outer_radius: float
    ) -> ConvexBody:
        """
        Constructs a body from its membership predicate, the radii could not
        be derived and have to be supplied.
        """
        if not 0 < inner_radius <= outer_radius:
            raise InvalidBodyError(
                f'Radii must satisfy 0 < r <= R: {inner_radius},'
                f' {outer_radius}'
            )
        if not membership(np.zeros(dim)):
            raise InvalidBodyError('Origin must be interior to the body')
        return cls(
            shape=OracleBody(membership=membership, dim=dim),
            inner_radius=float(inner_radius),
            outer_radius=float(outer_radius),
        )

    def _asdict(self) -> Dict[str, Any]:
        """
        Returns the body as dictionary.
        """
        shape = self.shape
        result: Dict[str, Any] = {
            'inner_radius': self.inner_radius,
            'outer_radius': self.outer_radius,
        }
        if isinstance(shape, Ball):
            result.update(
                kind='ball', radius=shape.radius,
                center=shape.center.tolist()
            )
        elif isinstance(shape, Box):
            result.update(
                kind='box', lower=shape.lower.tolist(),
                upper=shape.upper.tolist()
            )
        elif isinstance(shape, Polytope):
            result.update(
                kind='polytope', normals=shape.normals.tolist(),
                offsets=shape.offsets.tolist()
            )
        else:
            result.update(kind='oracle', dim=shape.dim)
        return result


def _polytope_vertices(a_mat: FloatArray, b_vec: FloatArray) -> FloatArray:
    """
    Computes vertices of the polytope, raising if it is unbounded.
    """
    dim = a_mat.shape[1]
    extremes = []
    for j in range(dim):
        for sign in (1.0, -1.0):
            cost = np.zeros(dim)
            cost[j] = -sign
            res = linprog(
                cost, A_ub=a_mat, b_ub=b_vec, bounds=[(None, None)] * dim,
                method='highs'
            )
            if res.status == 3:
                raise InvalidBodyError('Polytope is unbounded')
            if not res.success:
                raise InvalidBodyError(
                    f'Could not bound the polytope: {res.message}'
                )
            extremes.append(res.x)

    if dim == 1:
        return np.array(extremes, dtype=np.float64)

    halfspaces = np.hstack([a_mat, -b_vec[:, np.newaxis]])
    hsi = HalfspaceIntersection(halfspaces, np.zeros(dim))
    vertices: FloatArray = np.unique(
        np.round(hsi.intersections, 12), axis=0
    )
    _LOGGER.debug('Polytope has %s vertices', vertices.shape[0])
    return vertices


def contains(body: ConvexBody, x: ArrayLike) -> bool:
    """
    Tests the point for membership in the body.

    :param body: The body
    :param x: The point
    :return: Whether `x` lies in the body
    """
    return bool(contains_rows(body, np.atleast_2d(x))[0])


def contains_rows(body: ConvexBody, x: ArrayLike) -> NDArray[np.bool_]:
    """
    Tests each row of a batch for membership in the body.
    """
    pts, _ = as_batch(x)
    shape = body.shape
    if isinstance(shape, Ball):
        return np.asarray(
            np.linalg.norm(pts - shape.center, axis=1) <= shape.radius
        )
    if isinstance(shape, Box):
        return np.asarray(
            np.all((pts >= shape.lower) & (pts <= shape.upper), axis=1)
        )
    if isinstance(shape, Polytope):
        return np.asarray(
            np.all(pts @ shape.normals.T <= shape.offsets, axis=1)
        )
    return np.array([bool(shape.membership(row)) for row in pts])


def boundary_segments(body: ConvexBody) -> List[FloatArray]:
    """
    Returns the boundary of a planar body as a list of drawable pieces: a
    `(center_x, center_y, radius)` triple for a ball, or `(2, 2)` endpoint
    arrays for polygon edges in counter-clockwise order.
    """
    if body.dim != 2:
        raise InvalidBodyError(
            f'Boundary is drawable for planar bodies only, got {body.dim}'
        )
    shape = body.shape
    if isinstance(shape, Ball):
        return [np.array([shape.center[0], shape.center[1], shape.radius])]
    if isinstance(shape, Box):
        (x0, y0), (x1, y1) = shape.lower, shape.upper
        vertices = np.array([[x0, y0], [x1, y0], [x1, y1], [x0, y1]])
    elif isinstance(shape, Polytope) and body.vertices is not None:
        angles = np.arctan2(body.vertices[:, 1], body.vertices[:, 0])
        vertices = body.vertices[np.argsort(angles)]
    else:
        raise InvalidBodyError('Boundary of an oracle body is not drawable')
    return [
        np.vstack([vertices[i], vertices[(i + 1) % len(vertices)]])
        for i in range(len(vertices))
    ]
