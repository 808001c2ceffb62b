#!/usr/bin/env python3
"""Convert GAP transgrp library files into the JSON catalog format.

usage: convert_transgrp.py <trans.grp | transNN.grp[.gz]> <degree> <out.json>

Generators are converted from GAP's 1-based cycle notation to 0-based image
arrays. Each entry keeps its GAP name and its library number as provenance.
"""
import gzip
import json
import re
import sys


def tokenize(text):
    text = re.sub(r"#.*", "", text).replace("\\\n", "")
    pos = 0
    tok = re.compile(r'\s*(?:(?P<str>"(?:[^"\\]|\\.)*")|(?P<num>-?\d+)|(?P<id>[A-Za-z_][A-Za-z_0-9]*)|(?P<sym>:=|[\[\]\(\),;:])|(?P<other>\S))')
    out = []
    while True:
        m = tok.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError("cannot tokenize near: " + text[pos:pos + 40])
            return out
        pos = m.end()
        for kind in ("str", "num", "id", "sym", "other"):
            if m.group(kind) is not None:
                out.append((kind, m.group(kind)))
                break


class Parser:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None):
        t = self.toks[self.i]
        if value is not None and t[1] != value:
            raise ValueError(f"expected {value}, got {t}")
        self.i += 1
        return t

    def value(self):
        kind, v = self.peek()
        if v == "[":
            return self.list_()
        if v == "(":
            return ("perm", self.perm())
        if kind == "str":
            self.take()
            return json.loads(v)
        if kind == "num":
            self.take()
            return int(v)
        if kind == "id":
            self.take()
            return ("id", v)
        raise ValueError(f"unexpected token {v}")

    def list_(self):
        self.take("[")
        items = []
        while self.peek()[1] != "]":
            if self.peek()[1] == ",":
                self.take()
                continue
            items.append(self.value())
        self.take("]")
        return items

    def perm(self):
        cycles = []
        while self.i < len(self.toks) and self.peek()[1] == "(":
            self.take("(")
            cyc = []
            while self.peek()[1] != ")":
                if self.peek()[1] == ",":
                    self.take()
                    continue
                cyc.append(int(self.take()[1]))
            self.take(")")
            cycles.append(cyc)
        return cycles


def images(cycles, degree):
    img = list(range(degree))
    for cyc in cycles:
        for j, x in enumerate(cyc):
            img[x - 1] = cyc[(j + 1) % len(cyc)] - 1
    return img


def main():
    path, degree, out = sys.argv[1], int(sys.argv[2]), sys.argv[3]
    opener = gzip.open if path.endswith(".gz") else open
    with opener(path, "rt", encoding="latin-1") as fh:
        text = fh.read()
    toks = tokenize(text)
    p = Parser(toks)
    found = {}
    while p.i < len(toks):
        kind, v = p.take()
        if kind == "id" and v in ("TRANSGRP", "TRANSPROPERTIES") and p.i + 3 < len(toks):
            if p.peek()[1] == "[" and toks[p.i + 1][0] == "num" and toks[p.i + 3][1] == ":=":
                p.take("[")
                idx = int(p.take()[1])
                p.take("]")
                p.take(":=")
                lst = p.list_()
                if idx == degree:
                    found[v] = lst
            elif p.peek()[1] == ":=" and toks[p.i + 1][1] == "[":
                p.take(":=")
                lst = p.list_()
                if len(lst) >= degree:
                    found[v] = lst[degree - 1]
    groups = found.get("TRANSGRP")
    props = found.get("TRANSPROPERTIES")
    if groups is None:
        sys.exit(f"degree {degree} not found in {path}")
    entries = []
    for number, g in enumerate(groups, start=1):
        gens = [images(x[1], degree) for x in g if isinstance(x, tuple) and x[0] == "perm"]
        names = [x for x in g if isinstance(x, str)]
        entries.append({
            "name": f"T{degree}_{number}",
            "degree": degree,
            "generators": gens,
            "library_order": props[number - 1][0] if props else None,
            "source": f"GAP transgrp TransitiveGroup({degree},{number}) \"{names[0] if names else ''}\"",
        })
    with open(out, "w") as fh:
        json.dump(entries, fh, indent=1)
        fh.write("\n")
    print(f"{out}: {len(entries)} groups")


if __name__ == "__main__":
    main()
