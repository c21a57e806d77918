"""JSON and CSV serialization for pdfs."""

from __future__ import annotations

import csv

import numpy as np

from .pdfs import DiscretePdf, GridPdf


def pdf_to_json(pdf) -> dict:
    if isinstance(pdf, DiscretePdf):
        return {"kind": "discrete", "probs": pdf.probs.tolist()}
    if isinstance(pdf, GridPdf):
        return {
            "kind": "grid",
            "domain": pdf.label,
            "nodes": pdf.nodes.tolist(),
            "weights": pdf.weights.tolist(),
            "values": pdf.values.tolist(),
        }
    raise ValueError(f"not a pdf: {type(pdf).__name__}")


def pdf_from_json(data: dict):
    kind = data.get("kind")
    if kind == "discrete":
        return DiscretePdf(np.asarray(data["probs"], dtype=float))
    if kind == "grid":
        return GridPdf(
            np.asarray(data["nodes"], dtype=float),
            np.asarray(data["weights"], dtype=float),
            np.asarray(data["values"], dtype=float),
            label=data.get("domain"),
        )
    raise ValueError(f"unknown pdf kind: {kind!r}")


def pdf_to_csv(pdf, path) -> None:
    """Write (node, value) rows for plotting."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        if isinstance(pdf, DiscretePdf):
            writer.writerow(["index", "prob"])
            for i, p in enumerate(pdf.probs):
                writer.writerow([i, repr(float(p))])
        elif isinstance(pdf, GridPdf):
            d = pdf.nodes.shape[1]
            writer.writerow([f"x{k}" for k in range(d)] + ["value"])
            for node, v in zip(pdf.nodes, pdf.values):
                writer.writerow([repr(float(c)) for c in node] + [repr(float(v))])
        else:
            raise ValueError(f"not a pdf: {type(pdf).__name__}")
