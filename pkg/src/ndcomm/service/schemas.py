"""Request and response models for the lab service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

from ..boundslab import cliques, covers, polys
from ..heqfun import DEFAULT_PAIR_BUDGET


class VerifyRequest(BaseModel):
    protocol: Literal["quantum-heq", "classical-heq", "neq"]
    k: Optional[int] = None
    kprime: Optional[int] = None
    n: Optional[int] = None
    mode: Literal["exhaustive", "diagonal", "sample"] = "exhaustive"
    count: Optional[int] = None
    seed: Optional[int] = None
    pair_budget: int = Field(default=DEFAULT_PAIR_BUDGET, ge=1)
    threads: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _consistent(self):
        if self.protocol == "neq":
            if self.n is None:
                raise ValueError("the neq protocol needs n")
        else:
            if self.k is None or self.kprime is None:
                raise ValueError("heq protocols need k and kprime")
            if self.mode == "sample" and (self.count is None or self.seed is None):
                raise ValueError("sample mode needs count and seed")
        return self


class BoundsRequest(BaseModel):
    k: str = "3..8"
    kprime: str = "k..12"
    checks: bool = True
    max_k: int = 10
    max_kprime: int = 16


class CoverRequest(BaseModel):
    function: Literal["heq", "neq", "const1"]
    k: Optional[int] = None
    kprime: Optional[int] = None
    n: Optional[int] = None
    size: Optional[int] = None  # const1 domain side
    target: Literal["all-ones", "diagonal"] = "all-ones"
    pair_budget: int = Field(default=covers.DEFAULT_PAIR_BUDGET, ge=1)

    @model_validator(mode="after")
    def _consistent(self):
        if self.function == "heq" and (self.k is None or self.kprime is None):
            raise ValueError("heq needs k and kprime")
        if self.function == "neq" and self.n is None:
            raise ValueError("neq needs n")
        if self.function == "const1" and self.size is None:
            raise ValueError("const1 needs size")
        return self


class CliqueRequest(BaseModel):
    k: int
    kprime: int
    mode: Literal["exact", "heuristic"] = "exact"
    seed: Optional[int] = None
    restarts: int = Field(default=cliques.DEFAULT_HEURISTIC_RESTARTS, ge=1)
    steps: int = Field(default=cliques.DEFAULT_HEURISTIC_STEPS, ge=1)
    vertex_budget: int = Field(default=cliques.DEFAULT_VERTEX_BUDGET, ge=1)

    @model_validator(mode="after")
    def _consistent(self):
        if self.mode == "heuristic" and self.seed is None:
            raise ValueError("heuristic mode needs a seed")
        return self


class PolycheckRequest(BaseModel):
    k: int
    kprime: int
    sets: Literal["all-valid-sets", "clique-witness", "explicit"] = "all-valid-sets"
    explicit_sets: Optional[list[list[list[int]]]] = None
    basis_budget: int = Field(default=polys.DEFAULT_BASIS_BUDGET, ge=1)
    vertex_budget: int = Field(default=cliques.DEFAULT_VERTEX_BUDGET, ge=1)

    @model_validator(mode="after")
    def _consistent(self):
        if self.sets == "explicit" and not self.explicit_sets:
            raise ValueError("explicit mode needs explicit_sets")
        return self


class ReportEnvelope(BaseModel):
    report: dict
    failure_count: int
    duration_seconds: float
