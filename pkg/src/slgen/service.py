"""HTTP service and the in-process handlers behind it.

The handlers take and return pydantic models and raise the package's own
exceptions; the FastAPI layer translates those to status codes (400 for
malformed input, 422 for a mathematical obstruction with a
machine-readable code).  The CLI calls the same handlers directly, so
both front ends share one code path.
"""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from . import constructions as cons
from . import ff, identities, lie, mat, poly
from .errors import (
    ConsistencyLostError,
    EvenCharacteristicError,
    ExceptionalCaseError,
    MathPreconditionError,
    ParseError,
    SlgenError,
)
from .schemas import (
    CertificateModel,
    CountStRequest,
    CountStResponse,
    GenPairRequest,
    IdentityRequest,
    IdentityResponse,
    SearchF2Entry,
    SearchF2Request,
    SearchF2Response,
    SidonRequest,
    SidonResponse,
    VerifyRequest,
)


def _cert_model(cert: lie.GenPairCertificate) -> CertificateModel:
    return CertificateModel(**cert.to_json_dict())


def _parse_top_modulus(text, base):
    if text is None:
        return None
    return poly.parse_poly(text, base)


def handle_genpair(req: GenPairRequest) -> CertificateModel:
    base = ff.parse_field_spec(req.field)
    if base.char == 2:
        raise EvenCharacteristicError(
            "constructions need odd characteristic; use search-f2 instead"
        )
    top = _parse_top_modulus(req.top_modulus, base)
    n, seed = req.n, req.seed
    if req.strategy == "auto":
        cert = cons.auto_genpair(n, base, seed=seed, top_modulus=top)
    elif req.strategy == "consistent":
        ds = cons.random_consistent_set(n, base, seed=seed)
        cert = cons.genpair_from_consistent(ds, strategy="consistent", seed=seed)
    elif req.strategy == "sidon":
        sidon = cons.sidon_greedy(n - 1)
        values = [base.from_int(k) for k in cons.consistent_integer_set(sidon)]
        ds = cons.check_consistent(values)
        if not ds.consistent:
            raise ConsistencyLostError(
                "Sidon-derived set is not consistent over this field; "
                "the characteristic is too small"
            )
        cert = cons.genpair_from_consistent(ds, strategy="sidon", seed=seed)
    elif req.strategy == "normal":
        if n % base.char == 0:
            raise MathPreconditionError(
                "normal-element pipeline needs the characteristic "
                "not to divide n"
            )
        tower = ff.make_tower(base, n, top)
        report = cons.find_normal_element(tower, seed)
        cert = cons.companion_genpair(
            tower, report.min_poly_beta, strategy="normal", seed=seed
        )
    elif req.strategy == "sharply-traceless":
        if n == 3 and base.char == 3:
            raise ExceptionalCaseError(
                "sl_3 in characteristic 3 is not 2-generated"
            )
        tower = ff.make_tower(base, n, top)
        alpha = cons.find_st_element(tower, seed)
        cert = cons.companion_genpair(
            tower,
            cons.min_poly_over_base(alpha, tower),
            strategy="sharply-traceless",
            seed=seed,
        )
    else:
        raise ParseError(f"unknown strategy {req.strategy!r}")
    return _cert_model(cert)


def handle_search_f2(req: SearchF2Request) -> SearchF2Response:
    field = ff.parse_field_spec(req.field)
    if field.char != 2:
        raise ParseError("search-f2 needs a field of characteristic 2")
    results = []
    for n in req.n_values:
        if n < 2:
            raise ParseError("n must be >= 2")
        cert = lie.random_pair_search(n, field, req.trials, req.seed)
        results.append(
            SearchF2Entry(
                n=n,
                found=cert is not None,
                trials=req.trials,
                trials_used=None if cert is None else cert.trials_used,
                certificate=None if cert is None else _cert_model(cert),
            )
        )
    return SearchF2Response(field=req.field, seed=req.seed, results=results)


def handle_count_st(req: CountStRequest) -> CountStResponse:
    base = ff.parse_field_spec(req.field)
    tower = ff.make_tower(base, req.n, _parse_top_modulus(req.top_modulus, base))
    formula = cons.count_st_elements(tower)
    brute = None
    match = None
    if base.order**req.n <= req.brute_cap:
        brute = cons.brute_count_st(tower)
        match = brute == formula
    return CountStResponse(
        field=req.field, n=req.n, formula=formula, brute=brute, match=match
    )


_CASE_ALIASES = {
    "psl3": "psl3_char3",
    "psl3_char3": "psl3_char3",
    "psl4": "psl4_char2",
    "psl4_char2": "psl4_char2",
}


def handle_identity(req: IdentityRequest) -> IdentityResponse:
    case = _CASE_ALIASES.get(req.case)
    if case is None:
        raise ParseError(f"unknown case {req.case!r}; use psl3 or psl4")
    field = ff.parse_field_spec(req.field)
    report = identities.pair_dim_bound(case, field, req.trials, req.seed)
    return IdentityResponse(**report.to_json_dict())


def handle_sidon(req: SidonRequest) -> SidonResponse:
    if req.method == "greedy":
        s = cons.sidon_greedy(req.n)
    elif req.method == "erdos-turan":
        s = cons.sidon_erdos_turan(req.n)
    else:
        raise ParseError(f"unknown method {req.method!r}")
    out = SidonResponse(
        n=req.n, method=req.method, elems=list(s.elems), valid=s.is_valid()
    )
    if req.modulus is not None:
        ds = cons.consistent_from_sidon(s, req.modulus)
        out.consistent_set = [v.raw for v in ds.values]
        out.modulus = req.modulus
        out.consistent = ds.consistent
    return out


def handle_verify(req: VerifyRequest) -> CertificateModel:
    field = ff.parse_field_spec(req.field)
    if not req.matrices:
        raise ParseError("no matrices given")
    gens = [mat.parse_matrix(text, field) for text in req.matrices]
    if req.target not in ("sl", "psl"):
        raise ParseError(f"unknown target {req.target!r}")
    cert = lie.is_generating(gens, req.target, strategy="verify")
    return _cert_model(cert)


# ---------------------------------------------------------------------
# HTTP layer

app = FastAPI(title="slgen", version="0.1.0")


@app.exception_handler(MathPreconditionError)
async def _math_error(request, exc):
    return JSONResponse(
        status_code=422, content={"code": exc.code, "message": str(exc)}
    )


@app.exception_handler(SlgenError)
async def _input_error(request, exc):
    return JSONResponse(
        status_code=400,
        content={"code": type(exc).__name__, "message": str(exc)},
    )


@app.get("/health")
async def health():
    return {"status": "ok"}


@app.post("/genpair", response_model=CertificateModel)
async def genpair(req: GenPairRequest):
    return handle_genpair(req)


@app.post("/search-f2", response_model=SearchF2Response)
async def search_f2(req: SearchF2Request):
    return handle_search_f2(req)


@app.post("/count-st", response_model=CountStResponse)
async def count_st(req: CountStRequest):
    return handle_count_st(req)


@app.post("/identity", response_model=IdentityResponse)
async def identity(req: IdentityRequest):
    return handle_identity(req)


@app.post("/sidon", response_model=SidonResponse)
async def sidon(req: SidonRequest):
    return handle_sidon(req)


@app.post("/verify", response_model=CertificateModel)
async def verify(req: VerifyRequest):
    return handle_verify(req)
