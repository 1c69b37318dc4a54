"""JSON documents, weight-sliced charts and text reports."""
import json
from importlib import resources

from .spectral import init_page

SCHEMA_VERSION = "1.0"


def load_schema():
    text = resources.files("rsss").joinpath("schema/output.schema.json").read_text()
    return json.loads(text)


def validate(doc):
    """Raise jsonschema.ValidationError if doc does not match the published schema."""
    import jsonschema
    jsonschema.validate(doc, load_schema())


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _bounds_json(bounds):
    return {"max_filt": bounds.max_filt, "max_deg": bounds.max_deg}


def scenario_document(result):
    e2_page = result.pages[0] if result.pages else init_page(result.e2, result.bounds)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "scenario",
        "scenario": result.spec.to_json(),
        "bounds": _bounds_json(result.bounds),
        "e2": {"presentation": result.e2.to_json(), "entries": e2_page.to_json()["entries"]},
        "fired": list(result.log.fired),
        "warnings": list(result.log.warnings),
        "e_infinity": result.page.to_json(),
        "presentation": result.presentation.to_json(),
        "notes": list(result.notes),
        "metadata": result.metadata,
    }
    if result.closed_form is not None:
        doc["closed_form"] = {"presentation": result.closed_form.to_json(), "agrees": result.closed_form_agrees}
    return doc


def crosscheck_document(report):
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "crosscheck",
        "scenario": report.spec.to_json(),
        "report": report.to_json(),
        "notes": list(report.run.notes) if report.run is not None else [],
    }


def ext_document(result, preset):
    doc = {"schema_version": SCHEMA_VERSION, "command": "ext", "preset": preset}
    doc.update(result.to_json())
    return doc


def vex_document(u, v, res, diffs, sign_rows):
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "vex",
        "u": list(u),
        "v": list(v),
        "q": list(res.q),
        "r": list(res.r),
        "sigma_vex": list(res.sigma_vex),
        "sigma_differences": list(diffs),
        "sign_check": sign_rows,
    }


def split_primes_document(q, max_prime, pairs):
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "split-primes",
        "q": list(q),
        "max": max_prime,
        "primes": [{"p": p, "roots": list(r)} for p, r in pairs],
    }


# charts

def _cell(rank, torsion, ring):
    parts = [str(rank)] if rank else []
    parts += ["%s/%s" % ("Z", ring.render(x)) for x in torsion]
    return "+".join(parts)


def render_chart(page, weight, label=None):
    """Grid for one weight: filtration s across, motivic degree p up."""
    header = "E_%s  weight %d" % (label or page.r, weight)
    cells = {}
    for t in page.visible():
        if t.w == weight:
            cells[(t.s, t.p)] = _cell(page.rank(t), page.torsion(t), page.ring)
    if not cells:
        return header + "\n"
    max_s = max(s for s, _ in cells)
    max_p = max(p for _, p in cells)
    width = max(2, max(len(c) for c in cells.values()))
    lab = len(str(max_p))
    lines = [header]
    for p in range(max_p, -1, -1):
        row = [cells.get((s, p), ".").rjust(width) for s in range(max_s + 1)]
        lines.append("%s | %s" % (str(p).rjust(lab), " ".join(row)))
    lines.append(" " * lab + " +-" + "-" * ((width + 1) * (max_s + 1) - 1))
    lines.append(" " * lab + "   " + " ".join(str(s).rjust(width) for s in range(max_s + 1)))
    return "\n".join(lines) + "\n"


def _weights(page):
    return sorted({t.w for t in page.visible()})


def scenario_text(result):
    spec = result.spec.to_json()
    out = ["scenario: %s" % ", ".join("%s=%s" % (k, spec[k]) for k in sorted(spec))]
    out.append("bounds: s <= %d, p <= %d" % result.bounds)
    out.append("E2: %s" % result.e2.describe())
    for item in result.log.fired:
        status = "" if item["proven"] else "  [conjectural]"
        out.append("d_%d(%s) = %s%s" % (item["page"], item["source"], item["target"], status))
    for w in result.log.warnings:
        out.append("warning: " + w)
    out.append("")
    for w in _weights(result.page):
        out.append(render_chart(result.page, w, "inf"))
    out.append("E_inf presentation: %s" % result.presentation.text())
    if result.presentation.flags:
        out.append("flags: %s" % ", ".join(result.presentation.flags))
    if result.closed_form is not None:
        out.append("closed form agrees: %s" % result.closed_form_agrees)
    for n in result.notes + result.presentation.notes:
        out.append("note: " + n)
    return "\n".join(out) + "\n"


def crosscheck_text(report):
    d = report.to_json()
    return "\n".join("%s: %s" % (k, d[k]) for k in sorted(d)) + "\n"


def ext_text(result):
    lines = ["Ext over %s up to degree %d" % (result.coeff.spelling(), result.max_degree)]
    for t, (r, tor) in sorted(result.groups.items()):
        lines.append("  %s: %s" % (tuple(t), _cell(r, tor, result.coeff) or "0"))
    return "\n".join(lines) + "\n"


def generic_text(doc):
    keys = [k for k in sorted(doc) if k not in ("schema_version", "command")]
    return "\n".join("%s: %s" % (k, doc[k]) for k in keys) + "\n"
