export class ApiError extends Error {
    constructor(message, status, kind) {
        super(message);
        this.status = status;
        this.kind = kind;
    }
}
export class Client {
    constructor(baseUrl = "", fetchImpl = (input, init) => fetch(input, init)) {
        this.baseUrl = baseUrl;
        this.fetchImpl = fetchImpl;
    }
    async request(path, init) {
        let resp;
        try {
            resp = await this.fetchImpl(this.baseUrl + path, init);
        }
        catch (err) {
            throw new ApiError(`service unreachable: ${String(err)}`, 0, "network");
        }
        const body = await resp.json();
        if (!resp.ok) {
            const e = body;
            throw new ApiError(e.error ?? resp.statusText, resp.status, e.kind ?? "error");
        }
        return body;
    }
    presets() {
        return this.request("/presets");
    }
    createSession(preset) {
        return this.request("/sessions", {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify({ preset }),
        });
    }
    getSession(id) {
        return this.request(`/sessions/${id}`);
    }
    mutate(id, vertex, order) {
        return this.request(`/sessions/${id}/mutate`, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify({ vertex, order }),
        });
    }
    undo(id) {
        return this.request(`/sessions/${id}/undo`, { method: "POST" });
    }
    staircase(id) {
        return this.request(`/sessions/${id}/staircase`);
    }
}
