"""Drive the HTTP API end to end against a live server.

Builds a corpus and a stack, starts the service in a background thread,
then issues the requests the explorer frontend makes.
"""

import json
import tempfile
import threading
import time
import urllib.request
from pathlib import Path

import uvicorn

from salign import ThresholdRule, load_corpus, load_stack, score_corpus, synthetic
from salign.config import AppConfig
from salign.rle import encode_runs
from salign.service import create_app

PORT = 8731
workdir = Path(tempfile.mkdtemp(prefix="salign_api_"))
manifest = synthetic.build_corpus(workdir, n=32, dims=(16, 16), seed=1)
stack_manifest, patch = synthetic.build_stack(workdir / "stack", image_id="img0")

corpus = load_corpus(manifest)
rule = ThresholdRule.mean_plus_sigma(1.0)
scored = score_corpus(corpus, rule)
stack = load_stack(stack_manifest)
app = create_app(corpus, scored, AppConfig(manifest=manifest, rule=rule),
                 {stack.image_id: stack})

server = uvicorn.Server(uvicorn.Config(app, port=PORT, log_level="error"))
thread = threading.Thread(target=server.run, daemon=True)
thread.start()
while not server.started:
    time.sleep(0.05)


def get(path: str):
    with urllib.request.urlopen(f"http://127.0.0.1:{PORT}{path}") as resp:
        return json.loads(resp.read())


def post(path: str, payload: dict):
    req = urllib.request.Request(
        f"http://127.0.0.1:{PORT}{path}",
        data=json.dumps(payload).encode(),
        headers={"Content-Type": "application/json"},
    )
    with urllib.request.urlopen(req) as resp:
        return json.loads(resp.read())


print("health:", get("/api/health"))

page = get("/api/instances?sort=iou&dir=desc&limit=3")
print(f"\ntop iou instances ({page['total']} total):")
for item in page["items"]:
    print(f"  {item['id']}  iou {item['iou']:.3f}  case {item['case']}")

summary = get("/api/summary")
print("\ncase counts:", {k: v for k, v in summary["cases"].items() if v})

runs = encode_runs([int(i) for i in patch.reshape(-1).nonzero()[0]])
probe = post("/api/probe", {"image_id": "img0", "annotation": runs, "metric": "iou", "k": 3})
print("\nprobe ranking for the planted patch:")
for row in probe["results"]:
    print(f"  {row['rank']} {row['class_name']} {row['score']:.6f}")

server.should_exit = True
thread.join(timeout=5)
print("\ndone")
