"""Degree-preserving randomisation by fresh conditional sampling.

A rewire draws a new graph uniformly from the configuration model with the
host graph's degree data; the host's edges are not otherwise used. This
realises the conditional law exactly, without any swap-chain mixing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .generators import DegreeSequence, gen_config_inout, gen_config_total
from .graph import DirectedMultigraph

VARIANTS = ("inout", "total")


@dataclass(frozen=True)
class RewirePlan:
    variant: str
    degrees: DegreeSequence

    @classmethod
    def from_graph(cls, graph: DirectedMultigraph, variant: str) -> RewirePlan:
        if variant not in VARIANTS:
            raise InputError(f"unknown rewiring variant {variant!r}; expected one of {VARIANTS}")
        return cls(variant, DegreeSequence.from_graph(graph, variant))

    def sample(self, seed=None) -> DirectedMultigraph:
        if self.variant == "inout":
            return gen_config_inout(self.degrees, seed)
        return gen_config_total(self.degrees, seed)


def rewire_preserve_inout(graph: DirectedMultigraph, seed=None) -> DirectedMultigraph:
    return RewirePlan.from_graph(graph, "inout").sample(seed)


def rewire_preserve_total(graph: DirectedMultigraph, seed=None) -> DirectedMultigraph:
    return RewirePlan.from_graph(graph, "total").sample(seed)


def rewire(graph: DirectedMultigraph, variant: str, seed=None) -> DirectedMultigraph:
    return RewirePlan.from_graph(graph, variant).sample(seed)
