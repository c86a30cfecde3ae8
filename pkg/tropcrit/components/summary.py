"""Gallery index page."""

from typing import Any, Sequence

import markdown
from markupsafe import Markup, escape


def render_gallery_markdown(entries: Sequence[dict[str, Any]]) -> str:
    """Markdown table with one row per gallery case."""
    rows = [
        "# Tropical critical loci",
        "",
        "| case | polytope | parameters | K | cells | nodes | exact | figure |",
        "| --- | --- | --- | --- | --- | --- | --- | --- |",
    ]
    for entry in entries:
        params = ", ".join(f"{k}={v}" for k, v in entry.get("params", {}).items()) or "-"
        nodes = " ".join(
            f"({', '.join(node['u'])}){'' if node['included'] else '°'}" for node in entry.get("nodes", [])
        )
        figure = f"[svg]({entry['svg']})" if entry.get("svg") else "-"
        rows.append(
            f"| {entry['name']} | {entry['preset']} | {params} | {entry['K']} | "
            f"{entry['cells']} | {nodes or '-'} | {'yes' if entry['exact'] else 'no'} | {figure} |"
        )
    rows += ["", "Nodes marked ° are excluded boundary points.", ""]
    return "\n".join(rows)


def render_gallery_index(entries: Sequence[dict[str, Any]], title: str = "tropcrit gallery") -> tuple[str, Markup]:
    """Returns (index.md text, index.html page)."""
    text = render_gallery_markdown(entries)
    body = markdown.markdown(text, extensions=["tables"])
    html = Markup(
        "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n"
        f"<title>{escape(title)}</title>\n</head>\n<body>\n{body}\n</body>\n</html>\n"
    )
    return text, html
