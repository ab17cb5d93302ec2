"""Request/response models shared by the HTTP service and the CLI.

Every response is JSON-stable: fields are plain scalars, lists and
strings (matrices and polynomials in their text formats), so identical
requests serialize byte-identically.
"""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class CertificateModel(BaseModel):
    field: str
    n: int
    strategy: str
    target: str
    generators: list[str]
    closure_dim: int
    verdict: bool
    seed: Optional[int] = None
    trials_used: Optional[int] = None


class GenPairRequest(BaseModel):
    field: str
    n: int = Field(ge=2)
    seed: int = 0
    strategy: str = "auto"  # auto | consistent | sidon | normal | sharply-traceless
    top_modulus: Optional[str] = None


class SearchF2Request(BaseModel):
    n_values: list[int]
    trials: int = Field(default=10000, ge=1)
    seed: int = 0
    field: str = "2"


class SearchF2Entry(BaseModel):
    n: int
    found: bool
    trials: int
    trials_used: Optional[int] = None
    certificate: Optional[CertificateModel] = None


class SearchF2Response(BaseModel):
    field: str
    seed: int
    results: list[SearchF2Entry]


class CountStRequest(BaseModel):
    field: str
    n: int = Field(ge=2)
    brute_cap: int = 100000
    top_modulus: Optional[str] = None


class CountStResponse(BaseModel):
    field: str
    n: int
    formula: int
    brute: Optional[int] = None  # omitted when q^n exceeds the cap
    match: Optional[bool] = None


class IdentityRequest(BaseModel):
    case: str  # psl3 | psl4 (long forms accepted)
    field: str
    trials: int = Field(default=2000, ge=1)
    seed: int = 0


class IdentityResponse(BaseModel):
    case: str
    samples: int
    failures: list
    max_pair_dim: Optional[int] = None
    seed: Optional[int] = None


class SidonRequest(BaseModel):
    n: int = Field(ge=1)
    method: str = "greedy"  # greedy | erdos-turan
    modulus: Optional[int] = None  # reduce the consistent set mod this prime


class SidonResponse(BaseModel):
    n: int
    method: str
    elems: list[int]
    valid: bool
    consistent_set: Optional[list[int]] = None
    modulus: Optional[int] = None
    consistent: Optional[bool] = None


class VerifyRequest(BaseModel):
    field: str
    matrices: list[str]
    target: str = "sl"


class ErrorModel(BaseModel):
    code: str
    message: str
