"""Minimal deterministic SVG charts: a recovery scatter and a timing line plot."""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET

WIDTH, HEIGHT = 640, 480
LEFT, RIGHT, TOP, BOTTOM = 70, 20, 40, 60
SVG_NS = "http://www.w3.org/2000/svg"


def _num(x):
    return f"{x:.2f}".rstrip("0").rstrip(".")


def _nice_max(x):
    if x <= 0:
        return 1.0
    mag = 10 ** math.floor(math.log10(x))
    for step in (1, 2, 2.5, 5, 10):
        if step * mag >= x:
            return step * mag
    return 10 * mag


class _Canvas:
    def __init__(self, title, x_max, y_max, x_min=0.0, y_min=0.0):
        self.x_min, self.x_max = x_min, x_max
        self.y_min, self.y_max = y_min, y_max
        self.root = ET.Element(
            "svg",
            {
                "xmlns": SVG_NS,
                "version": "1.1",
                "width": str(WIDTH),
                "height": str(HEIGHT),
                "viewBox": f"0 0 {WIDTH} {HEIGHT}",
                "font-family": "sans-serif",
                "font-size": "12",
            },
        )
        ET.SubElement(self.root, "rect", {"width": str(WIDTH), "height": str(HEIGHT), "fill": "white"})
        t = ET.SubElement(self.root, "text", {"class": "title", "x": str(WIDTH // 2), "y": "24",
                                              "text-anchor": "middle", "font-size": "14"})
        t.text = title
        self.axes = ET.SubElement(self.root, "g", {"class": "axes", "stroke": "black"})
        self.data = ET.SubElement(self.root, "g", {"class": "data"})

    def px(self, x):
        span = WIDTH - LEFT - RIGHT
        return LEFT + (x - self.x_min) / (self.x_max - self.x_min) * span

    def py(self, y):
        span = HEIGHT - TOP - BOTTOM
        return HEIGHT - BOTTOM - (y - self.y_min) / (self.y_max - self.y_min) * span

    def frame(self, x_label, y_label, x_ticks, y_ticks):
        x0, y0 = self.px(self.x_min), self.py(self.y_min)
        x1, y1 = self.px(self.x_max), self.py(self.y_max)
        ET.SubElement(self.axes, "line", {"x1": _num(x0), "y1": _num(y0), "x2": _num(x1), "y2": _num(y0)})
        ET.SubElement(self.axes, "line", {"x1": _num(x0), "y1": _num(y0), "x2": _num(x0), "y2": _num(y1)})
        for tx in x_ticks:
            px = _num(self.px(tx))
            ET.SubElement(self.axes, "line", {"x1": px, "y1": _num(y0), "x2": px, "y2": _num(y0 + 5)})
            lab = ET.SubElement(self.root, "text", {"class": "tick", "x": px, "y": _num(y0 + 18),
                                                    "text-anchor": "middle"})
            lab.text = f"{tx:g}"
        for ty in y_ticks:
            py = _num(self.py(ty))
            ET.SubElement(self.axes, "line", {"x1": _num(x0 - 5), "y1": py, "x2": _num(x0), "y2": py})
            lab = ET.SubElement(self.root, "text", {"class": "tick", "x": _num(x0 - 8), "y": py,
                                                    "text-anchor": "end", "dominant-baseline": "middle"})
            lab.text = f"{ty:g}"
        xl = ET.SubElement(self.root, "text", {"class": "xlabel", "x": _num((x0 + x1) / 2),
                                               "y": str(HEIGHT - 15), "text-anchor": "middle"})
        xl.text = x_label
        cy = (y0 + y1) / 2
        yl = ET.SubElement(self.root, "text", {"class": "ylabel", "x": "18", "y": _num(cy),
                                               "text-anchor": "middle",
                                               "transform": f"rotate(-90 18 {_num(cy)})"})
        yl.text = y_label

    def marker(self, x, y, color):
        ET.SubElement(self.data, "circle", {"class": "marker", "cx": _num(self.px(x)),
                                            "cy": _num(self.py(y)), "r": "4", "fill": color})

    def tostring(self):
        ET.indent(self.root)
        return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(self.root, encoding="unicode") + "\n"


def _ticks(hi, count=5):
    return [hi * i / count for i in range(count + 1)]


def recovery_svg(theta_true, theta_hat):
    """Scatter of (true, estimated) pairs with a dashed identity segment."""
    finite = [h for h in theta_hat if math.isfinite(h)]
    top = _nice_max(max(list(theta_true) + finite))
    cv = _Canvas("Maximum likelihood estimates for the Clayton parameter", top, top)
    cv.frame("True theta", "Estimated theta", _ticks(top), _ticks(top))
    ET.SubElement(cv.data, "line", {"class": "identity", "x1": _num(cv.px(0)), "y1": _num(cv.py(0)),
                                    "x2": _num(cv.px(top)), "y2": _num(cv.py(top)),
                                    "stroke": "gray", "stroke-dasharray": "6,4"})
    for t, h in zip(theta_true, theta_hat):
        if math.isfinite(h):
            cv.marker(t, min(h, top), "#1f77b4")

    legend = ET.SubElement(cv.root, "g", {"class": "legend"})
    lx, ly = LEFT + 15, TOP + 15
    ET.SubElement(legend, "circle", {"class": "legend-swatch", "cx": str(lx + 10), "cy": str(ly),
                                     "r": "4", "fill": "#1f77b4"})
    t = ET.SubElement(legend, "text", {"x": str(lx + 28), "y": str(ly), "dominant-baseline": "middle"})
    t.text = "Estimates"
    swatch = ET.SubElement(legend, "g", {"class": "legend-swatch", "stroke": "gray"})
    for k in range(3):  # drawn as short segments so the plot keeps a single dashed element
        ET.SubElement(swatch, "line", {"x1": str(lx + 7 * k), "y1": str(ly + 20),
                                       "x2": str(lx + 7 * k + 4), "y2": str(ly + 20)})
    t = ET.SubElement(legend, "text", {"x": str(lx + 28), "y": str(ly + 20), "dominant-baseline": "middle"})
    t.text = "Identity"
    return cv.tostring()


def scaling_svg(workers, seconds):
    """Line-with-markers plot of wall time against worker count."""
    x_hi = max(workers) + 1
    y_hi = _nice_max(max(seconds) * 1.1 if seconds else 1.0)
    cv = _Canvas("Wall time against number of workers", x_hi, y_hi)
    step = max(1, math.ceil(x_hi / 10))
    cv.frame("Number of workers", "Execution time (s)", list(range(0, x_hi + 1, step)), _ticks(y_hi))
    pts = " ".join(f"{_num(cv.px(w))},{_num(cv.py(s))}" for w, s in zip(workers, seconds))
    ET.SubElement(cv.data, "polyline", {"class": "series", "points": pts, "fill": "none",
                                        "stroke": "#1f77b4", "stroke-width": "1.5"})
    for w, s in zip(workers, seconds):
        cv.marker(w, s, "#1f77b4")
    return cv.tostring()
