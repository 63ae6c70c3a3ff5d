"""Trial classification and seeded Monte Carlo sweeps over (n, p) grids.

Each trial runs every certificate and witness on one sampled presentation
and reports them side by side.  Sweep rows are a pure function of the
config: trial seeds come from a SplitMix64 hash of (master seed, n, p bits,
trial index), so cells can be added or reordered without perturbing any
existing trial, and any parallel schedule yields byte-identical CSV because
rows are emitted in (cell, trial) order by a single writer.
"""

import math
import re
import struct
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from .freeness import build_hypergraph, greedy_eliminate, hypergraph_diagnostics, validate_certificate
from .linkgraph import build_link_graph, degree_concentration, is_connected
from .spectra import SolverError, zuk_certificate
from .words import sample_binomial

CHI_ASSUMPTION = "aspherical presentation complex (relation density below 1/2)"
SPLIT_ASSUMPTION = "nontrivial generators (relation density below 4/9)"

CSV_COLUMNS = (
    "n", "p", "seed", "trial", "t", "free_cert", "rank", "chi", "chi_witness",
    "isolated_count", "connected", "lambda2", "t_cert", "max_h_component",
    "degree_dev", "error", "elapsed_ms",
)

MIDDLE_REGIME_NOTE = (
    "note: the chi and isolated-generator witnesses share a density window "
    "only when log n is large; desk-scale grids exercise them in separate cells."
)


# --- witnesses ---

@dataclass(frozen=True)
class EulerResult:
    chi: int
    witness: bool          # chi > 0 rules out freeness
    assumes: str = CHI_ASSUMPTION


def euler_characteristic(pres):
    """chi = 1 - n + t; positive chi witnesses a non-free group."""
    chi = 1 - pres.n + pres.t
    return EulerResult(chi, chi > 0)


def find_isolated_generators(pres):
    """Generators that occur in no relation, in ascending order.

    A nonempty answer witnesses a free splitting, which rules out (T).
    """
    used = set()
    for w in pres.relations:
        for letter in w:
            used.add(abs(letter))
    return [g for g in range(1, pres.n + 1) if g not in used]


# --- per-trial verdict ---

@dataclass(frozen=True)
class TrialSettings:
    tol: float = 1e-10
    margin: float = 1e-8
    spectra: bool = True
    timing: bool = False


@dataclass(frozen=True)
class TrialVerdict:
    n: int
    t: int
    free_certified: bool
    rank: int | None
    certificate: object            # FreenessCertificate | None
    chi: int
    chi_witness: bool
    isolated: tuple[int, ...]
    connected: bool
    zuk: object                    # ZukResult | None when spectra are skipped
    max_h_component: int
    degree_dev: float
    elapsed_ms: float | None


def classify_trial(pres, settings=TrialSettings()):
    """Run all certificates and witnesses on one presentation.

    Certificates found by the greedy search are replayed through the
    independent validator before being reported.  Mutually contradictory
    verdicts (free + positive chi, (T) + isolated generator) are asserted
    against; either pair firing together would be a bug, not data.
    """
    start = time.perf_counter() if settings.timing else None
    outcome = greedy_eliminate(pres)
    if outcome.succeeded:
        validate_certificate(pres, outcome.certificate)
    euler = euler_characteristic(pres)
    isolated = tuple(find_isolated_generators(pres))
    diag = hypergraph_diagnostics(build_hypergraph(pres))
    link = build_link_graph(pres)
    _, degree_dev = degree_concentration(link)
    connected = is_connected(link)
    zuk = None
    if settings.spectra:
        zuk = zuk_certificate(pres, tol=settings.tol, margin=settings.margin, link=link)

    if outcome.succeeded and euler.witness:
        raise RuntimeError("verdict exclusivity violated: free certificate with positive chi")
    if zuk is not None and zuk.certified and isolated:
        raise RuntimeError("verdict exclusivity violated: (T) certificate with isolated generator")

    elapsed = None
    if settings.timing:
        elapsed = (time.perf_counter() - start) * 1000.0
    return TrialVerdict(
        n=pres.n,
        t=pres.t,
        free_certified=outcome.succeeded,
        rank=outcome.certificate.rank if outcome.succeeded else None,
        certificate=outcome.certificate,
        chi=euler.chi,
        chi_witness=euler.witness,
        isolated=isolated,
        connected=connected,
        zuk=zuk,
        max_h_component=diag.max_component_size,
        degree_dev=degree_dev,
        elapsed_ms=elapsed,
    )


def verdict_record(verdict):
    """JSON-ready view of a verdict, caveats included."""
    from .freeness import certificate_record

    zuk = verdict.zuk
    return {
        "n": verdict.n,
        "t": verdict.t,
        "free": {
            "certified": verdict.free_certified,
            "rank": verdict.rank,
            "certificate": certificate_record(verdict.certificate)
            if verdict.certificate is not None
            else None,
        },
        "chi": {
            "value": verdict.chi,
            "witness": verdict.chi_witness,
            "assumes": CHI_ASSUMPTION,
        },
        "isolated": {
            "generators": list(verdict.isolated),
            "witness": bool(verdict.isolated),
            "assumes": SPLIT_ASSUMPTION,
        },
        "t_certificate": None
        if zuk is None
        else {
            "certified": zuk.certified,
            "lambda2": zuk.lambda2,
            "connected": zuk.connected,
            "margin": zuk.margin,
        },
        "stats": {
            "connected": verdict.connected,
            "max_h_component": verdict.max_h_component,
            "degree_dev": verdict.degree_dev,
            "elapsed_ms": verdict.elapsed_ms,
        },
    }


# --- p expressions ---
#
# Three shapes: "<c>/n^2", "<c>*log(n)/n^2" (natural log), "abs:<float>".

_P_PLAIN = re.compile(r"([0-9.eE+-]+)/n\^2$")
_P_LOG = re.compile(r"([0-9.eE+-]+)\*log\(n\)/n\^2$")


def parse_p_expression(text):
    """Compile a density expression into a function of n."""
    expr = text.strip().replace(" ", "")
    if expr.startswith("abs:"):
        value = float(expr[4:])
        return lambda n: value
    m = _P_PLAIN.match(expr)
    if m:
        c = float(m.group(1))
        return lambda n: c / n**2
    m = _P_LOG.match(expr)
    if m:
        c = float(m.group(1))
        return lambda n: c * math.log(n) / n**2
    raise ValueError(
        f"bad p expression {text!r}: expected c/n^2, c*log(n)/n^2, or abs:<float>"
    )


# --- sweep config ---

@dataclass(frozen=True)
class SweepCell:
    n: int
    p_expr: str
    trials: int
    spectra: bool = True

    def p_value(self):
        p = parse_p_expression(self.p_expr)(self.n)
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"p expression {self.p_expr!r} gives {p} at n={self.n}")
        return p


@dataclass(frozen=True)
class SweepConfig:
    cells: tuple[SweepCell, ...]
    master_seed: int = 0
    output: str | None = None
    tol: float = 1e-10
    margin: float = 1e-8
    timing: bool = False
    jobs: int = 1


_CELL_KEY_RE = re.compile(r"(\w+)=(\S+)")


def _parse_cell(value, lineno):
    fields = dict(_CELL_KEY_RE.findall(value))
    extra = set(fields) - {"n", "p", "trials", "spectra"}
    if extra or not {"n", "p", "trials"} <= set(fields):
        raise ValueError(f"line {lineno}: cell needs n=, p=, trials= (optional spectra=)")
    spectra = fields.get("spectra", "on")
    if spectra not in ("on", "off"):
        raise ValueError(f"line {lineno}: spectra must be on or off")
    cell = SweepCell(
        n=int(fields["n"]),
        p_expr=fields["p"],
        trials=int(fields["trials"]),
        spectra=spectra == "on",
    )
    if cell.n < 1 or cell.trials < 0:
        raise ValueError(f"line {lineno}: n must be >= 1 and trials >= 0")
    cell.p_value()  # validate now, not mid-sweep
    return cell


def parse_sweep_config(text):
    """Flat key = value config; 'cell =' lines may repeat."""
    cells = []
    scalars = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "cell":
            cells.append(_parse_cell(value, lineno))
        elif key in ("master_seed", "jobs"):
            scalars[key] = int(value)
        elif key in ("tol", "margin"):
            scalars[key] = float(value)
        elif key == "timing":
            if value not in ("on", "off"):
                raise ValueError(f"line {lineno}: timing must be on or off")
            scalars[key] = value == "on"
        elif key == "output":
            scalars[key] = value
        else:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
    if not cells:
        raise ValueError("config defines no cells")
    return SweepConfig(cells=tuple(cells), **scalars)


# --- seeding ---

_M64 = (1 << 64) - 1


def _mix64(x):
    # SplitMix64 finalizer
    x = (x + 0x9E3779B97F4A7C15) & _M64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & _M64
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & _M64
    x ^= x >> 31
    return x


def trial_seed(master_seed, n, p, trial):
    """Stable 64-bit seed from cell content; independent of cell position."""
    (p_bits,) = struct.unpack("<Q", struct.pack("<d", float(p)))
    h = _mix64(master_seed & _M64)
    h = _mix64(h ^ n)
    h = _mix64(h ^ p_bits)
    h = _mix64(h ^ trial)
    return h


# --- sweep execution ---

def _format_float(x):
    if x != x:  # NaN never appears by construction, guard anyway
        return "nan"
    return repr(float(x))


def _run_trial(task):
    cell_idx, trial, n, p, seed, settings = task
    row = {name: "" for name in CSV_COLUMNS}
    row["n"] = str(n)
    row["p"] = _format_float(p)
    row["seed"] = str(seed)
    row["trial"] = str(trial)
    try:
        verdict = classify_trial(sample_binomial(n, p, seed), settings)
    except SolverError as exc:
        row["error"] = str(exc).replace(",", ";")
        return cell_idx, trial, row
    row["t"] = str(verdict.t)
    row["free_cert"] = "1" if verdict.free_certified else "0"
    row["rank"] = "" if verdict.rank is None else str(verdict.rank)
    row["chi"] = str(verdict.chi)
    row["chi_witness"] = "1" if verdict.chi_witness else "0"
    row["isolated_count"] = str(len(verdict.isolated))
    row["connected"] = "1" if verdict.connected else "0"
    if verdict.zuk is not None:
        row["lambda2"] = _format_float(verdict.zuk.lambda2)
        row["t_cert"] = "1" if verdict.zuk.certified else "0"
    row["max_h_component"] = str(verdict.max_h_component)
    row["degree_dev"] = _format_float(verdict.degree_dev)
    if verdict.elapsed_ms is not None:
        row["elapsed_ms"] = _format_float(verdict.elapsed_ms)
    return cell_idx, trial, row


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[dict, ...]
    csv_text: str
    summary: str


def run_sweep(config):
    """Run every cell, emit CSV text (and the output file when configured)."""
    settings_base = TrialSettings(tol=config.tol, margin=config.margin, timing=config.timing)
    tasks = []
    for cell_idx, cell in enumerate(config.cells):
        p = cell.p_value()
        settings = replace(settings_base, spectra=cell.spectra)
        for trial in range(cell.trials):
            seed = trial_seed(config.master_seed, cell.n, p, trial)
            tasks.append((cell_idx, trial, cell.n, p, seed, settings))

    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_run_trial, tasks, chunksize=8))
    else:
        results = [_run_trial(task) for task in tasks]
    results.sort(key=lambda item: (item[0], item[1]))
    rows = tuple(row for _, _, row in results)

    lines = [",".join(CSV_COLUMNS)]
    for row in rows:
        lines.append(",".join(row[name] for name in CSV_COLUMNS))
    csv_text = "\n".join(lines) + "\n"
    if config.output:
        with open(config.output, "w") as fh:
            fh.write(csv_text)
    return SweepResult(rows, csv_text, summarize_rows(rows))


def summarize_rows(rows):
    """Aggregate verdict frequencies per (n, p) cell, in row order."""
    order = []
    agg = {}
    for row in rows:
        key = (row["n"], row["p"])
        if key not in agg:
            agg[key] = {"trials": 0, "free": 0, "chi": 0, "isolated": 0, "tcert": 0, "errors": 0}
            order.append(key)
        a = agg[key]
        a["trials"] += 1
        if row["error"]:
            a["errors"] += 1
            continue
        a["free"] += row["free_cert"] == "1"
        a["chi"] += row["chi_witness"] == "1"
        a["isolated"] += row["isolated_count"] not in ("", "0")
        a["tcert"] += row["t_cert"] == "1"
    lines = []
    for n, p in order:
        a = agg[(n, p)]
        lines.append(
            f"cell n={n} p={p} trials={a['trials']}: "
            f"free={a['free']} chi_witness={a['chi']} isolated={a['isolated']} "
            f"t_cert={a['tcert']} errors={a['errors']}"
        )
    lines.append(MIDDLE_REGIME_NOTE)
    return "\n".join(lines) + "\n"
