/* @ts-self-types="./cutstokes_demo.d.ts" */

export class MeshView {
    static __wrap(ptr) {
        const obj = Object.create(MeshView.prototype);
        obj.__wbg_ptr = ptr;
        MeshViewFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        MeshViewFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_meshview_free(ptr, 0);
    }
    /**
     * @returns {number}
     */
    get area() {
        const ret = wasm.__wbg_get_meshview_area(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get boundary_length() {
        const ret = wasm.__wbg_get_meshview_boundary_length(this.__wbg_ptr);
        return ret;
    }
    /**
     * 0 interior, 1 cut, 2 exterior.
     * @returns {Uint8Array}
     */
    get labels() {
        const ret = wasm.__wbg_get_meshview_labels(this.__wbg_ptr);
        var v1 = getArrayU8FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 1, 1);
        return v1;
    }
    /**
     * Corner coordinates, six numbers per background triangle.
     * @returns {Float64Array}
     */
    get triangles() {
        const ret = wasm.__wbg_get_meshview_triangles(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @param {number} arg0
     */
    set area(arg0) {
        wasm.__wbg_set_meshview_area(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set boundary_length(arg0) {
        wasm.__wbg_set_meshview_boundary_length(this.__wbg_ptr, arg0);
    }
    /**
     * 0 interior, 1 cut, 2 exterior.
     * @param {Uint8Array} arg0
     */
    set labels(arg0) {
        const ptr0 = passArray8ToWasm0(arg0, wasm.__wbindgen_malloc);
        const len0 = WASM_VECTOR_LEN;
        wasm.__wbg_set_meshview_labels(this.__wbg_ptr, ptr0, len0);
    }
    /**
     * Corner coordinates, six numbers per background triangle.
     * @param {Float64Array} arg0
     */
    set triangles(arg0) {
        const ptr0 = passArrayF64ToWasm0(arg0, wasm.__wbindgen_malloc);
        const len0 = WASM_VECTOR_LEN;
        wasm.__wbg_set_meshview_triangles(this.__wbg_ptr, ptr0, len0);
    }
}
if (Symbol.dispose) MeshView.prototype[Symbol.dispose] = MeshView.prototype.free;

export class SolveView {
    static __wrap(ptr) {
        const obj = Object.create(SolveView.prototype);
        obj.__wbg_ptr = ptr;
        SolveViewFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        SolveViewFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_solveview_free(ptr, 0);
    }
    /**
     * @returns {number}
     */
    get div_max() {
        const ret = wasm.__wbg_get_solveview_div_max(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get e_p() {
        const ret = wasm.__wbg_get_solveview_e_p(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get e_u_h1() {
        const ret = wasm.__wbg_get_solveview_e_u_h1(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get e_u_l2() {
        const ret = wasm.__wbg_get_solveview_e_u_l2(this.__wbg_ptr);
        return ret;
    }
    /**
     * Extended pressure per sub-triangle.
     * @returns {Float64Array}
     */
    get pressure() {
        const ret = wasm.__wbg_get_solveview_pressure(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {number}
     */
    get residual() {
        const ret = wasm.__wbg_get_solveview_residual(this.__wbg_ptr);
        return ret;
    }
    /**
     * Corner coordinates, six numbers per macro sub-triangle.
     * @returns {Float64Array}
     */
    get triangles() {
        const ret = wasm.__wbg_get_solveview_triangles(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {number}
     */
    get unknowns() {
        const ret = wasm.__wbg_get_solveview_unknowns(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * Velocity at sub-triangle centroids, two numbers each.
     * @returns {Float64Array}
     */
    get velocity() {
        const ret = wasm.__wbg_get_solveview_velocity(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @param {number} arg0
     */
    set div_max(arg0) {
        wasm.__wbg_set_solveview_div_max(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set e_p(arg0) {
        wasm.__wbg_set_solveview_e_p(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set e_u_h1(arg0) {
        wasm.__wbg_set_solveview_e_u_h1(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set e_u_l2(arg0) {
        wasm.__wbg_set_solveview_e_u_l2(this.__wbg_ptr, arg0);
    }
    /**
     * Extended pressure per sub-triangle.
     * @param {Float64Array} arg0
     */
    set pressure(arg0) {
        const ptr0 = passArrayF64ToWasm0(arg0, wasm.__wbindgen_malloc);
        const len0 = WASM_VECTOR_LEN;
        wasm.__wbg_set_solveview_pressure(this.__wbg_ptr, ptr0, len0);
    }
    /**
     * @param {number} arg0
     */
    set residual(arg0) {
        wasm.__wbg_set_solveview_residual(this.__wbg_ptr, arg0);
    }
    /**
     * Corner coordinates, six numbers per macro sub-triangle.
     * @param {Float64Array} arg0
     */
    set triangles(arg0) {
        const ptr0 = passArrayF64ToWasm0(arg0, wasm.__wbindgen_malloc);
        const len0 = WASM_VECTOR_LEN;
        wasm.__wbg_set_solveview_triangles(this.__wbg_ptr, ptr0, len0);
    }
    /**
     * @param {number} arg0
     */
    set unknowns(arg0) {
        wasm.__wbg_set_solveview_unknowns(this.__wbg_ptr, arg0);
    }
    /**
     * Velocity at sub-triangle centroids, two numbers each.
     * @param {Float64Array} arg0
     */
    set velocity(arg0) {
        const ptr0 = passArrayF64ToWasm0(arg0, wasm.__wbindgen_malloc);
        const len0 = WASM_VECTOR_LEN;
        wasm.__wbg_set_solveview_velocity(this.__wbg_ptr, ptr0, len0);
    }
}
if (Symbol.dispose) SolveView.prototype[Symbol.dispose] = SolveView.prototype.free;

/**
 * @param {number} cx
 * @param {number} cy
 * @param {number} radius
 * @param {number} n
 * @returns {MeshView}
 */
export function classify(cx, cy, radius, n) {
    const ret = wasm.classify(cx, cy, radius, n);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return MeshView.__wrap(ret[0]);
}

/**
 * `[‖u_x‖, ‖u_y‖]` per angular velocity for the uniform boundary flow on
 * the centered disk of radius 0.5.
 * @param {number} n
 * @param {Float64Array} omegas
 * @returns {Float64Array}
 */
export function coriolis_sweep(n, omegas) {
    const ptr0 = passArrayF64ToWasm0(omegas, wasm.__wbindgen_malloc);
    const len0 = WASM_VECTOR_LEN;
    const ret = wasm.coriolis_sweep(n, ptr0, len0);
    if (ret[3]) {
        throw takeFromExternrefTable0(ret[2]);
    }
    var v2 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
    wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
    return v2;
}

/**
 * Manufactured flow on the given disk; `nitsche` selects the scalar
 * boundary formulation.
 * @param {number} cx
 * @param {number} cy
 * @param {number} radius
 * @param {number} n
 * @param {boolean} nitsche
 * @returns {SolveView}
 */
export function solve(cx, cy, radius, n, nitsche) {
    const ret = wasm.solve(cx, cy, radius, n, nitsche);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return SolveView.__wrap(ret[0]);
}
function __wbg_get_imports() {
    const import0 = {
        __proto__: null,
        __wbg___wbindgen_throw_41e9ee4f547fc59a: function(arg0, arg1) {
            throw new Error(getStringFromWasm0(arg0, arg1));
        },
        __wbindgen_generic_0000000000000001: function(arg0, arg1) {
            // Cast intrinsic for `Ref(String) -> Externref`.
            const ret = getStringFromWasm0(arg0, arg1);
            return ret;
        },
        __wbindgen_init_externref_table: function() {
            const table = wasm.__wbindgen_externrefs;
            const offset = table.grow(4);
            table.set(0, undefined);
            table.set(offset + 0, undefined);
            table.set(offset + 1, null);
            table.set(offset + 2, true);
            table.set(offset + 3, false);
        },
    };
    return {
        __proto__: null,
        "./cutstokes_demo_bg.js": import0,
    };
}

const MeshViewFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_meshview_free(ptr, 1));
const SolveViewFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_solveview_free(ptr, 1));

function getArrayF64FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getFloat64ArrayMemory0().subarray(ptr / 8, ptr / 8 + len);
}

function getArrayU8FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getUint8ArrayMemory0().subarray(ptr / 1, ptr / 1 + len);
}

let cachedFloat64ArrayMemory0 = null;
function getFloat64ArrayMemory0() {
    if (cachedFloat64ArrayMemory0 === null || cachedFloat64ArrayMemory0.byteLength === 0) {
        cachedFloat64ArrayMemory0 = new Float64Array(wasm.memory.buffer);
    }
    return cachedFloat64ArrayMemory0;
}

function getStringFromWasm0(ptr, len) {
    return decodeText(ptr >>> 0, len);
}

let cachedUint8ArrayMemory0 = null;
function getUint8ArrayMemory0() {
    if (cachedUint8ArrayMemory0 === null || cachedUint8ArrayMemory0.byteLength === 0) {
        cachedUint8ArrayMemory0 = new Uint8Array(wasm.memory.buffer);
    }
    return cachedUint8ArrayMemory0;
}

function passArray8ToWasm0(arg, malloc) {
    const ptr = malloc(arg.length * 1, 1) >>> 0;
    getUint8ArrayMemory0().set(arg, ptr / 1);
    WASM_VECTOR_LEN = arg.length;
    return ptr;
}

function passArrayF64ToWasm0(arg, malloc) {
    const ptr = malloc(arg.length * 8, 8) >>> 0;
    getFloat64ArrayMemory0().set(arg, ptr / 8);
    WASM_VECTOR_LEN = arg.length;
    return ptr;
}

function takeFromExternrefTable0(idx) {
    const value = wasm.__wbindgen_externrefs.get(idx);
    wasm.__externref_table_dealloc(idx);
    return value;
}

let cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
cachedTextDecoder.decode();
const MAX_SAFARI_DECODE_BYTES = 2146435072;
let numBytesDecoded = 0;
function decodeText(ptr, len) {
    numBytesDecoded += len;
    if (numBytesDecoded >= MAX_SAFARI_DECODE_BYTES) {
        cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
        cachedTextDecoder.decode();
        numBytesDecoded = len;
    }
    return cachedTextDecoder.decode(getUint8ArrayMemory0().subarray(ptr, ptr + len));
}

let WASM_VECTOR_LEN = 0;

let wasmModule, wasmInstance, wasm;
function __wbg_finalize_init(instance, module) {
    wasmInstance = instance;
    wasm = instance.exports;
    wasmModule = module;
    cachedFloat64ArrayMemory0 = null;
    cachedUint8ArrayMemory0 = null;
    wasm.__wbindgen_start();
    return wasm;
}

async function __wbg_load(module, imports) {
    if (typeof Response === 'function' && module instanceof Response) {
        if (!module.ok) {
            throw new Error(`failed to fetch Wasm: ${module.status} ${module.statusText} fetching '${module.url}'`);
        }

        if (typeof WebAssembly.instantiateStreaming === 'function') {
            try {
                return await WebAssembly.instantiateStreaming(module, imports);
            } catch (e) {
                const validResponse = expectedResponseType(module.type);

                if (validResponse && module.headers.get('Content-Type') !== 'application/wasm') {
                    console.warn("`WebAssembly.instantiateStreaming` failed because your server does not serve Wasm with `application/wasm` MIME type. Falling back to `WebAssembly.instantiate` which is slower. Original error:\n", e);

                } else { throw e; }
            }
        }

        const bytes = await module.arrayBuffer();
        return await WebAssembly.instantiate(bytes, imports);
    } else {
        const instance = await WebAssembly.instantiate(module, imports);

        if (instance instanceof WebAssembly.Instance) {
            return { instance, module };
        } else {
            return instance;
        }
    }

    function expectedResponseType(type) {
        switch (type) {
            case 'basic': case 'cors': case 'default': return true;
        }
        return false;
    }
}

function initSync(module) {
    if (wasm !== undefined) return wasm;


    if (module !== undefined) {
        if (Object.getPrototypeOf(module) === Object.prototype) {
            ({module} = module)
        } else {
            console.warn('using deprecated parameters for `initSync()`; pass a single object instead')
        }
    }

    const imports = __wbg_get_imports();
    if (!(module instanceof WebAssembly.Module)) {
        module = new WebAssembly.Module(module);
    }
    const instance = new WebAssembly.Instance(module, imports);
    return __wbg_finalize_init(instance, module);
}

async function __wbg_init(module_or_path) {
    if (wasm !== undefined) return wasm;


    if (module_or_path !== undefined) {
        if (Object.getPrototypeOf(module_or_path) === Object.prototype) {
            ({module_or_path} = module_or_path)
        } else {
            console.warn('using deprecated parameters for the initialization function; pass a single object instead')
        }
    }

    if (module_or_path === undefined) {
        module_or_path = new URL('cutstokes_demo_bg.wasm', import.meta.url);
    }
    const imports = __wbg_get_imports();

    if (typeof module_or_path === 'string' || (typeof Request === 'function' && module_or_path instanceof Request) || (typeof URL === 'function' && module_or_path instanceof URL)) {
        module_or_path = fetch(module_or_path);
    }

    const { instance, module } = await __wbg_load(await module_or_path, imports);

    return __wbg_finalize_init(instance, module);
}

export { initSync, __wbg_init as default };
