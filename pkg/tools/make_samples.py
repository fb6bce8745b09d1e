"""Regenerate the shipped sample schemes from faceted.samples."""
from pathlib import Path

from faceted import samples
from faceted.exchange import export_canonical
from faceted.scheme import load_scheme

DATA = Path(__file__).resolve().parents[1] / "src" / "faceted" / "data"

for name, build in samples.BUILDERS.items():
    grammar, records = build()
    (DATA / f"{name}.fcs").write_bytes(export_canonical(load_scheme(grammar, records)))
    print(name)
