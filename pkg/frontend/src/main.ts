import { createApi } from "./api.js";
import { App } from "./app.js";

const app = new App(createApi(localStorage.getItem("normplan-api") ?? ""), document);
void app.start();
