import { ApiClient } from "./api";
import { FlowController } from "./flow";
import { render } from "./render";

const base = new URLSearchParams(location.search).get("api") ?? "http://localhost:8000";
const flow = new FlowController(new ApiClient(base));
const root = document.getElementById("app")!;

flow
  .loadCatalog()
  .then(() => render(flow, root))
  .catch((err) => {
    root.textContent = `could not reach the service at ${base}: ${err}`;
  });
