"""XMLBIF 0.3 import/export for interchange with external BN tools.

The TABLE element lists probabilities with the child variable varying
fastest and the first GIVEN parent slowest, which is exactly this package's
row-major CPT layout flattened.  Loading applies the same renormalize-or-
reject rule as the JSON reader.
"""

from __future__ import annotations

import os
import xml.etree.ElementTree as ET
from xml.dom import minidom

from .errors import FormatError
from .jsonio import _renormalize_rows
from .network import Cpt, Network, Variable


def export_xmlbif(net: Network, name: str = "driftnet") -> str:
    bif = ET.Element("BIF", VERSION="0.3")
    network = ET.SubElement(bif, "NETWORK")
    ET.SubElement(network, "NAME").text = name
    for v in net.variables:
        var_el = ET.SubElement(network, "VARIABLE", TYPE="nature")
        ET.SubElement(var_el, "NAME").text = v.id
        for state in v.states:
            ET.SubElement(var_el, "OUTCOME").text = state
    for cpt in net.cpts:
        def_el = ET.SubElement(network, "DEFINITION")
        ET.SubElement(def_el, "FOR").text = cpt.child
        for p in cpt.parents:
            ET.SubElement(def_el, "GIVEN").text = p
        flat = " ".join(repr(float(x)) for x in cpt.table.ravel())
        ET.SubElement(def_el, "TABLE").text = flat
    raw = ET.tostring(bif, encoding="unicode")
    pretty = minidom.parseString(raw).toprettyxml(indent="  ")
    # minidom prepends its own declaration; keep exactly one
    return pretty


def import_xmlbif(text: str) -> Network:
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise FormatError(f"not well-formed XML ({exc})") from None
    network = root.find("NETWORK")
    if root.tag != "BIF" or network is None:
        raise FormatError("document is not an XMLBIF network")

    variables: list[Variable] = []
    cards: dict[str, int] = {}
    for var_el in network.findall("VARIABLE"):
        name_el = var_el.find("NAME")
        if name_el is None or not name_el.text:
            raise FormatError("VARIABLE without a NAME")
        states = tuple(o.text or "" for o in var_el.findall("OUTCOME"))
        variables.append(Variable(name_el.text, states))
        cards[name_el.text] = len(states)

    cpts: list[Cpt] = []
    for def_el in network.findall("DEFINITION"):
        for_el = def_el.find("FOR")
        table_el = def_el.find("TABLE")
        if for_el is None or not for_el.text or table_el is None or not table_el.text:
            raise FormatError("DEFINITION without FOR or TABLE")
        child = for_el.text
        parents = tuple(g.text or "" for g in def_el.findall("GIVEN"))
        values = [float(x) for x in table_el.text.split()]
        if child not in cards:
            raise FormatError(f"DEFINITION for undeclared variable {child!r}")
        n_cols = cards[child]
        n_rows = 1
        for p in parents:
            if p not in cards:
                raise FormatError(f"GIVEN names undeclared variable {p!r}")
            n_rows *= cards[p]
        if len(values) != n_rows * n_cols:
            raise FormatError(
                f"TABLE for {child!r} has {len(values)} entries, expected {n_rows * n_cols}"
            )
        rows = [values[i * n_cols:(i + 1) * n_cols] for i in range(n_rows)]
        cpts.append(Cpt(child, parents, _renormalize_rows(rows, child)))

    return Network(tuple(variables), tuple(cpts))


def load_xmlbif(path: str | os.PathLike) -> Network:
    with open(path, "r", encoding="utf-8") as fh:
        return import_xmlbif(fh.read())


def save_xmlbif(net: Network, path: str | os.PathLike, name: str = "driftnet") -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(export_xmlbif(net, name))
