"""File formats for coefficients, zero sets, curves, and run manifests.

All formats are line-oriented ASCII with LF endings.  Deterministic
manifest fields (command, parameters, tool version) are appended as
trailing '# key: value' comment lines; parsers stop at the promised data
count, so the comments never disturb the declared layout.
"""

from __future__ import annotations

import io as _io
from dataclasses import dataclass, field

from .polygen import ExactPolynomial, PolyKind

FORMAT_VERSION = "v1"
TOOL_VERSION = "attractorlab 0.1.0"


@dataclass
class RunManifest:
    command: str
    parameters: dict = field(default_factory=dict)

    def lines(self):
        yield f"# command: {self.command}"
        for key in sorted(self.parameters):
            yield f"# {key}: {self.parameters[key]}"
        yield f"# tool: {TOOL_VERSION}"


def _append_manifest(fh, manifest: RunManifest | None):
    if manifest is not None:
        for line in manifest.lines():
            fh.write(line + "\n")


def write_coefficients(path, poly: ExactPolynomial, manifest: RunManifest | None = None):
    kind = "partition" if poly.kind is PolyKind.PARTITION else "plane"
    with open(path, "w", newline="\n") as fh:
        fh.write(f"partition-poly {FORMAT_VERSION} kind={kind} n={poly.degree}\n")
        for c in poly.coeffs:
            fh.write(f"{c}\n")
        _append_manifest(fh, manifest)


def read_coefficients(path) -> ExactPolynomial:
    with open(path) as fh:
        header = fh.readline().rstrip("\n").split()
        if len(header) != 4 or header[0] != "partition-poly" or header[1] != FORMAT_VERSION:
            raise ValueError(f"not a partition-poly {FORMAT_VERSION} file: {path}")
        fields = dict(part.split("=", 1) for part in header[2:])
        n = int(fields["n"])
        kind = PolyKind.PARTITION if fields["kind"] == "partition" else PolyKind.PLANE_PARTITION
        coeffs = tuple(int(fh.readline()) for _ in range(n + 1))
    return ExactPolynomial(n, coeffs, kind)


def write_zeros(path, zeroset, manifest: RunManifest | None = None):
    """Zero file: header 'zeros v1 n=<n> prec=<bits>', then re/im/residual rows."""
    prec = zeroset.precision_bits
    digits = max(1, int(prec / 3.32))
    with open(path, "w", newline="\n") as fh:
        fh.write(f"zeros {FORMAT_VERSION} n={zeroset.degree} prec={prec}\n")
        for k in range(zeroset.origin_multiplicity):
            fh.write("0\t0\t0\n")
        for z, res in zip(zeroset.zeros, zeroset.residuals):
            re = _mpnstr(z.real, digits)
            im = _mpnstr(z.imag, digits)
            fh.write(f"{re}\t{im}\t{res:.3e}\n")
        _append_manifest(fh, manifest)


def _mpnstr(x, digits):
    # x is a gmpy2.mpfr; its __format__ handles significant-digit output
    return format(x, f".{digits}g")


def read_zeros(path):
    """Returns (n, prec_bits, list of (re, im, residual) floats-as-mpf strings)."""
    import mpmath as mp

    with open(path) as fh:
        header = fh.readline().rstrip("\n").split()
        if len(header) != 4 or header[0] != "zeros" or header[1] != FORMAT_VERSION:
            raise ValueError(f"not a zeros {FORMAT_VERSION} file: {path}")
        fields = dict(part.split("=", 1) for part in header[2:])
        n = int(fields["n"])
        prec = int(fields["prec"])
        rows = []
        for line in fh:
            if line.startswith("#") or not line.strip():
                continue
            re, im, res = line.split("\t")
            with mp.workprec(prec):
                rows.append((mp.mpf(re), mp.mpf(im), float(res)))
    return n, prec, rows


def write_curve(path, curve, manifest: RunManifest | None = None):
    """Curve file: header 'curve v1 pair=<kl> tol=<t>', rows s/re/im."""
    k, l = curve.pair
    with open(path, "w", newline="\n") as fh:
        fh.write(f"curve {FORMAT_VERSION} pair={k}{l} tol={curve.tol:g}\n")
        for s, z in zip(curve.arclength, curve.points):
            fh.write(f"{s:.12g}\t{z.real:.15g}\t{z.imag:.15g}\n")
        _append_manifest(fh, manifest)


def read_curve(path):
    with open(path) as fh:
        header = fh.readline().rstrip("\n").split()
        if len(header) != 4 or header[0] != "curve" or header[1] != FORMAT_VERSION:
            raise ValueError(f"not a curve {FORMAT_VERSION} file: {path}")
        fields = dict(part.split("=", 1) for part in header[2:])
        pair = (int(fields["pair"][0]), int(fields["pair"][1]))
        tol = float(fields["tol"])
        ss, pts = [], []
        for line in fh:
            if line.startswith("#") or not line.strip():
                continue
            s, re, im = line.split("\t")
            ss.append(float(s))
            pts.append(complex(float(re), float(im)))
    return pair, tol, ss, pts


def format_census_csv(report_rows, columns) -> str:
    buf = _io.StringIO()
    buf.write(",".join(columns) + "\n")
    for row in report_rows:
        buf.write(",".join(str(row[c]) for c in columns) + "\n")
    return buf.getvalue()
