"""Regenerate the JSON layout fixtures in this directory.

    python tests/fixtures/build_fixtures.py

Texts for the Walmart, Apple and Toyota documents are taken from the
published ESG reports; geometry and font sizes are synthetic.
"""

import random
from pathlib import Path

from esgstruct.elements import ImagePayload
from esgstruct.ingest import LayoutBlock, dump_blocks
from esgstruct.tables import Cell, TableGrid

HERE = Path(__file__).parent

WALMART_TITLE = "FY2023 HIGHLIGHTS"
WALMART_ITEMS = [
    "Assessed ~13,100 third-party responsible sourcing facility audit reports³³",
    "Over 90% of assessed audit reports were rated green or yellow and less than 2% "
    "percent of facilities assessed received a successive orange rating³⁴",
    "99% of Walmart U.S. and 99% of Sam's Club U.S. net sales of fresh produce and "
    "floral were from suppliers endorsing the produce Ethical Charter³⁵",
    "Continued to invest in building capability in responsible recruitment and "
    "dignified working conditions, including in grants to IREX, Global Fishing Watch, "
    "The Nature Conservancy, Polaris, and the Woodrow Wilson International Center for Scholars",
]

APPLE_SECTIONS = {
    "Climate Change": [
        "Achieve carbon neutrality for our entire carbon footprint by 2030, and reach our "
        "emissions reduction target⁵",
        "Create all products with net zero carbon impact by 2030",
        "Transition our entire product value chain, including manufacturing and product use, "
        "to 100 percent clean electricity by 2030",
    ],
    "Resources": [
        "Use only recycled and renewable materials in our products and packaging, and "
        "enhance material recovery",
        "Eliminate plastics in our packaging by 2025⁶",
        "Reduce water impacts in the manufacturing of our products, use of our services, "
        "and operation of our facilities",
        "Eliminate waste sent to landfill from our corporate facilities and our suppliers",
    ],
    "Smarter Chemistry": [
        "Drive comprehensive reporting of the chemicals used in our supply chain to make "
        "our products",
        "Integrate smarter chemistry innovation into the way we design and build our products",
        "Avoid exposure to chemicals that could be harmful to human health or the environment",
    ],
}

TOYOTA_ROWS = [
    ["By type", "", "2019", "2020", "2021"],
    ["Non-energy-related CO₂", "", "0.008", "0.007", "0.007"],
    ["CH₄", "", "0.015", "0.015", "0.013"],
    ["N₂O", "", "0.009", "0.008", "0.009"],
    ["PFCs", "", "0.009", "0.008", "0.041"],
    ["HFCs", "", "0", "0", "0"],
    ["SF₆", "", "0.002", "0.005", "0.002"],
    ["Total", "", "0.042", "0.043", "0.072"],
]


def soft_wrap(text: str, width: int) -> str:
    """Break text into lines of roughly ``width`` characters, as a PDF extractor would."""
    lines, line = [], ""
    for word in text.split(" "):
        if line and len(line) + 1 + len(word) > width:
            lines.append(line)
            line = word
        else:
            line = f"{line} {word}" if line else word
    lines.append(line)
    return "\n".join(lines)


def walmart_blocks():
    blocks = [
        LayoutBlock(page=1, bbox=(0.08, 0.12, 0.6, 0.16), font_size=18.0, text=WALMART_TITLE),
    ]
    y = 0.2
    for item in WALMART_ITEMS:
        blocks.append(
            LayoutBlock(page=1, bbox=(0.08, y, 0.9, y + 0.06), font_size=10.0,
                        text="• " + soft_wrap(item, 60))
        )
        y += 0.08
    blocks.append(LayoutBlock(page=1, bbox=(0.45, 0.95, 0.55, 0.97), font_size=8.0, text="12"))
    return blocks


def apple_blocks():
    # Two columns; the file lists the right column first to exercise reading order.
    left, right = [], []
    y = 0.12
    for title in ("Climate Change", "Resources"):
        left.append(LayoutBlock(page=1, bbox=(0.06, y, 0.45, y + 0.03), font_size=14.0, text=title))
        y += 0.05
        for goal in APPLE_SECTIONS[title]:
            left.append(LayoutBlock(page=1, bbox=(0.06, y, 0.45, y + 0.06), font_size=10.0,
                                    text=soft_wrap(goal, 45)))
            y += 0.08
        y += 0.04
    y = 0.12
    right.append(LayoutBlock(page=1, bbox=(0.55, y, 0.95, y + 0.03), font_size=14.0,
                             text="Smarter Chemistry"))
    y += 0.05
    for goal in APPLE_SECTIONS["Smarter Chemistry"]:
        right.append(LayoutBlock(page=1, bbox=(0.55, y, 0.95, y + 0.06), font_size=10.0,
                                 text=soft_wrap(goal, 45)))
        y += 0.08
    return right + left


def toyota_grid() -> TableGrid:
    return TableGrid.from_rows(TOYOTA_ROWS, header_rows=1)


def toyota_blocks():
    return [
        LayoutBlock(page=1, bbox=(0.08, 0.1, 0.9, 0.14), font_size=14.0,
                    text="Greenhouse Gas Emissions Other Than Energy-related CO₂"),
        LayoutBlock(page=1, bbox=(0.08, 0.16, 0.9, 0.5), kind_hint="table", table=toyota_grid()),
        LayoutBlock(page=1, bbox=(0.08, 0.52, 0.9, 0.55), font_size=8.0,
                    text="Calculated in accordance with the Japanese Act on Promotion of "
                         "Global Warming Countermeasures"),
    ]


WORDS = (
    "emissions scope supplier renewable energy water waste packaging recycled target "
    "governance board climate report facility audit sourcing programme community "
    "diversity safety employees investment reduction baseline product carbon"
).split()


def _sentence(rng: random.Random, lo: int, hi: int) -> str:
    words = [rng.choice(WORDS) for _ in range(rng.randint(lo, hi))]
    words[0] = words[0].capitalize()
    return " ".join(words) + "."


def mixed_blocks(n_pages: int = 10, per_page: int = 20, seed: int = 2024):
    """200 blocks: running header/footer, titles, prose, bullets, tables, images."""
    rng = random.Random(seed)
    blocks = []
    for page in range(1, n_pages + 1):
        page_blocks = [
            LayoutBlock(page=page, bbox=(0.1, 0.02, 0.9, 0.05), font_size=8.0,
                        text=f"Sustainability Report 2023 | {page}"),
            LayoutBlock(page=page, bbox=(0.4, 0.95, 0.6, 0.98), font_size=8.0,
                        text=f"Page {page} of {n_pages}"),
        ]
        two_column = page % 3 == 0
        body = per_page - len(page_blocks)
        for i in range(body):
            column = (i % 2) if two_column else 0
            x0 = 0.08 + 0.46 * column
            x1 = x0 + (0.4 if two_column else 0.84)
            y0 = 0.08 + 0.85 * (i // (2 if two_column else 1)) / body * (2 if two_column else 1) * 0.98
            y0 = min(y0, 0.88)
            bbox = (x0, round(y0, 4), x1, round(min(y0 + 0.03, 0.9), 4))
            roll = rng.random()
            if i == 0 or roll < 0.12:
                text = " ".join(rng.choice(WORDS) for _ in range(rng.randint(1, 4))).title()
                page_blocks.append(LayoutBlock(page=page, bbox=bbox, font_size=14.0, text=text))
            elif roll < 0.22:
                rows = [["Metric", "2021", "2022"]] + [
                    [rng.choice(WORDS), str(rng.randint(1, 999)), f"{rng.randint(1, 99)},{rng.randint(100, 999)}"]
                    for _ in range(rng.randint(1, 4))
                ]
                grid = TableGrid.from_rows(rows, header_rows=1)
                if rng.random() < 0.5:
                    cells = [c for c in grid.cells if c.row != 0] + [
                        Cell(0, 0, "Metric"), Cell(0, 1, "Fiscal year", col_span=2)
                    ]
                    grid = TableGrid(grid.n_rows, grid.n_cols, tuple(cells), 1)
                page_blocks.append(LayoutBlock(page=page, bbox=bbox, kind_hint="table", table=grid))
            elif roll < 0.3:
                data = bytes(rng.randrange(256) for _ in range(rng.randint(16, 64)))
                alt = "Chart of emissions by scope" if rng.random() < 0.3 else None
                page_blocks.append(LayoutBlock(
                    page=page, bbox=bbox, kind_hint="image",
                    image=ImagePayload("image/png", data, alt)))
            elif roll < 0.5:
                item = "● " + soft_wrap(_sentence(rng, 5, 14), 50)
                page_blocks.append(LayoutBlock(page=page, bbox=bbox, font_size=10.0, text=item))
            else:
                para = " ".join(_sentence(rng, 6, 18) for _ in range(rng.randint(1, 5)))
                page_blocks.append(LayoutBlock(page=page, bbox=bbox, font_size=10.0,
                                               text=soft_wrap(para, 70)))
        blocks.extend(page_blocks)
    return blocks


def main():
    fixtures = {
        "walmart.json": ("Walmart ESG report, FY2023 highlights", walmart_blocks()),
        "apple.json": ("Apple Environmental Progress Report, goals", apple_blocks()),
        "toyota.json": ("Toyota environmental data, GHG table", toyota_blocks()),
        "mixed_200.json": ("synthetic 10-page report", mixed_blocks()),
    }
    for name, (source, blocks) in fixtures.items():
        (HERE / name).write_text(dump_blocks(blocks, source), encoding="utf-8")
        print(f"wrote {name}: {len(blocks)} blocks")


if __name__ == "__main__":
    main()
